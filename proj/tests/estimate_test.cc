// Copyright 2026 The wmtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wmtomo/estimate.h"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "wmtomo/fisher.h"

using namespace wmtomo;

namespace {

const SmcSettings kNoResample{0.98, 0.0};

ParticleEnsemble lattice_ensemble(size_t n) {
    std::vector<Vec3> pts = oracle::fibonacci_points(n, false);
    for (auto &p : pts) p.normalize();
    return ParticleEnsemble(pts, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

QubitEffect z_effect(int sign) { return {0.5, Vec3(0, 0, 0.5 * sign)}; }

int octant(const Vec3 &r) { return (r.x() > 0) + 2 * (r.y() > 0) + 4 * (r.z() > 0); }

}  // namespace

TEST(Prior, UniformWeightsAndIsotropic) {
    Rng rng(1);
    ParticleEnsemble e = init_prior(4000, rng);
    EXPECT_EQ(e.size(), 4000u);
    for (double w : e.weights()) ASSERT_DOUBLE_EQ(w, 1.0 / 4000.0);
    EXPECT_LT(e.mean_bloch().norm(), 0.05);
    EXPECT_NEAR(e.effective_sample_size(), 4000.0, 1e-6);
}

TEST(Prior, SeededRepeatable) {
    Rng a(3), b(3);
    EXPECT_EQ(init_prior(200, a).bloch(), init_prior(200, b).bloch());
}

TEST(Prior, TooFewParticlesRejected) {
    Rng rng(1);
    EXPECT_THROW(init_prior(99, rng), std::invalid_argument);
    EXPECT_THROW(ParticleEnsemble(std::vector<Vec3>(100, Vec3(0, 0, 2)), std::vector<double>(100, 0.01)),
                 std::invalid_argument);
    EXPECT_THROW(ParticleEnsemble(std::vector<Vec3>(100, Vec3(0, 0, 1)), std::vector<double>(100, 0.02)),
                 std::invalid_argument);
}

TEST(BayesUpdate, ProjectorOutcomeKillsOrthogonalState) {
    std::vector<Vec3> pts(100, Vec3(0, 0, 1));
    for (size_t i = 50; i < 100; ++i) pts[i] = Vec3(0, 0, -1);
    ParticleEnsemble e(pts, std::vector<double>(100, 0.01));
    Rng rng(1);
    ParticleEnsemble post = bayes_update(e, z_effect(+1), rng, kNoResample);
    for (size_t i = 0; i < 50; ++i) EXPECT_NEAR(post.weights()[i], 0.02, 1e-15);
    for (size_t i = 50; i < 100; ++i) EXPECT_EQ(post.weights()[i], 0.0);
}

TEST(BayesUpdate, RepeatedOutcomesMoveMeanMonotonically) {
    Rng rng(2);
    ParticleEnsemble e = init_prior(2000, rng);
    double last = e.mean_bloch().z();
    for (int i = 0; i < 10; ++i) {
        e = bayes_update(e, z_effect(+1), rng, kNoResample);
        double z = e.mean_bloch().z();
        EXPECT_GT(z, last);
        last = z;
    }
}

TEST(BayesUpdate, UninformativeEffectLeavesWeights) {
    Rng rng(4);
    ParticleEnsemble e = init_prior(500, rng);
    ParticleEnsemble post = bayes_update(e, QubitEffect{0.3, Vec3::Zero()}, rng, kNoResample);
    for (size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(post.weights()[i], e.weights()[i], 1e-15);
}

TEST(BayesUpdate, ImpossibleOutcomeThrows) {
    ParticleEnsemble e(std::vector<Vec3>(100, Vec3(0, 0, -1)), std::vector<double>(100, 0.01));
    Rng rng(1);
    EXPECT_THROW(bayes_update(e, z_effect(+1), rng, kNoResample), NumericalError);
    EXPECT_THROW(bayes_update(e, QubitEffect{0.0, Vec3::Zero()}, rng), std::invalid_argument);
}

TEST(BayesUpdate, PovmOutcomeOverload) {
    Rng rng(5);
    ParticleEnsemble e = init_prior(300, rng);
    DiscretePovm p = mub_povm();
    ParticleEnsemble a = bayes_update(e, p, p[2].label, rng, kNoResample);
    ParticleEnsemble b = bayes_update(e, qubit_effect(p[2].op), rng, kNoResample);
    for (size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(a.weights()[i], b.weights()[i], 1e-15);
    OutcomeLabel missing;
    missing.cell = 999;
    EXPECT_THROW(bayes_update(e, p, missing, rng), std::invalid_argument);
}

TEST(BayesUpdate, GridMatchesBruteForcePosterior) {
    const size_t n = 2000;
    ParticleEnsemble e = lattice_ensemble(n);
    DiscretePovm p = tetrahedron_povm();
    Rng rng(6);
    std::vector<size_t> outcomes;
    Vec3 truth = Vec3(0.3, -0.5, 0.8).normalized();
    for (int k = 0; k < 30; ++k) outcomes.push_back(sample_outcome_index(p, DensityOperator::from_bloch(truth), rng));
    for (size_t k : outcomes) e = bayes_update(e, p, p[k].label, rng, kNoResample);

    std::vector<double> brute(n);
    double z = 0.0;
    for (size_t i = 0; i < n; ++i) {
        CMatrix rho = 0.5 * (CMatrix::Identity(2, 2) + e.bloch()[i].x() * oracle::pauli(0) +
                             e.bloch()[i].y() * oracle::pauli(1) + e.bloch()[i].z() * oracle::pauli(2));
        double like = 1.0;
        for (size_t k : outcomes) like *= (rho * p[k].op).trace().real();
        brute[i] = like;
        z += like;
    }
    for (size_t i = 0; i < n; ++i) ASSERT_NEAR(e.weights()[i], brute[i] / z, 1e-12);
}

TEST(BayesUpdate, ResampledPosteriorMatchesGridOnCoarseBins) {
    Rng rng(8);
    DiscretePovm p = mub_povm();
    Vec3 truth = Vec3(0.2, 0.4, -0.7).normalized();
    std::vector<size_t> outcomes;
    for (int k = 0; k < 15; ++k) outcomes.push_back(sample_outcome_index(p, DensityOperator::from_bloch(truth), rng));

    ParticleEnsemble smc = init_prior(20000, rng);
    for (size_t k : outcomes) smc = bayes_update(smc, p, p[k].label, rng);

    ParticleEnsemble grid = lattice_ensemble(100000);
    for (size_t k : outcomes) grid = bayes_update(grid, p, p[k].label, rng, kNoResample);

    std::array<double, 8> a{}, b{};
    for (size_t i = 0; i < smc.size(); ++i) a[octant(smc.bloch()[i])] += smc.weights()[i];
    for (size_t i = 0; i < grid.size(); ++i) b[octant(grid.bloch()[i])] += grid.weights()[i];
    double tv = 0.0;
    for (int c = 0; c < 8; ++c) tv += 0.5 * std::abs(a[c] - b[c]);
    EXPECT_LT(tv, 0.02);
}

TEST(Resample, DegenerateEnsembleStaysClustered) {
    std::vector<Vec3> pts(200, Vec3(1, 0, 0));
    Rng rng(9);
    ParticleEnsemble e = resample(ParticleEnsemble(pts, std::vector<double>(200, 0.005)), rng);
    for (const Vec3 &v : e.bloch()) EXPECT_NEAR(v.x(), 1.0, 1e-12);
    EXPECT_NEAR(e.effective_sample_size(), 200.0, 1e-9);
}

TEST(Resample, PreservesMeanDirection) {
    Rng rng(10);
    double drift = 0.0;
    for (int t = 0; t < 100; ++t) {
        ParticleEnsemble e = init_prior(1000, rng);
        for (int k = 0; k < 5; ++k) e = bayes_update(e, QubitEffect{0.5, 0.5 * random_unit_vector(rng)}, rng, kNoResample);
        ParticleEnsemble r = resample(e, rng);
        drift += (r.mean_bloch() - e.mean_bloch()).norm();
    }
    EXPECT_LT(drift / 100.0, 0.05);
    Rng r2(1);
    EXPECT_THROW(resample(init_prior(100, r2), r2, 0.0), std::invalid_argument);
}

TEST(Estimate, ConcentratedPosterior) {
    Vec3 target = Vec3(1, 2, 2).normalized();
    ParticleEnsemble e(std::vector<Vec3>(100, target), std::vector<double>(100, 0.01));
    PointEstimate est = fidelity_optimal_estimate(e);
    EXPECT_FALSE(est.degenerate);
    EXPECT_LE((est.bloch - target).norm(), 1e-12);
}

TEST(Estimate, DegenerateFallsBackToPlusX) {
    std::vector<Vec3> pts(100, Vec3(0, 0, 1));
    for (size_t i = 50; i < 100; ++i) pts[i] = Vec3(0, 0, -1);
    PointEstimate est = fidelity_optimal_estimate(ParticleEnsemble(pts, std::vector<double>(100, 0.01)));
    EXPECT_TRUE(est.degenerate);
    EXPECT_LE((est.bloch - Vec3::UnitX()).norm(), 1e-15);
}

TEST(Estimate, BeatsRandomCandidates) {
    Rng rng(11);
    ParticleEnsemble e = init_prior(500, rng);
    for (int k = 0; k < 8; ++k) e = bayes_update(e, QubitEffect{0.5, 0.5 * random_unit_vector(rng)}, rng, kNoResample);
    auto expected_fidelity = [&](const Vec3 &n) {
        double f = 0.0;
        for (size_t i = 0; i < e.size(); ++i) f += e.weights()[i] * 0.5 * (1.0 + n.dot(e.bloch()[i]));
        return f;
    };
    double best = expected_fidelity(fidelity_optimal_estimate(e).bloch);
    for (int i = 0; i < 200; ++i) EXPECT_LE(expected_fidelity(random_unit_vector(rng)), best + 1e-15);
}

TEST(Checkpoints, LogSpaced) {
    std::vector<size_t> c = log_checkpoints(1000);
    std::vector<size_t> want{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
    EXPECT_EQ(c, want);
    EXPECT_EQ(log_checkpoints(1), std::vector<size_t>{1});
    EXPECT_EQ(log_checkpoints(30), (std::vector<size_t>{1, 2, 5, 10, 20, 30}));
}

TEST(Plan, Validation) {
    ExperimentPlan p;
    p.n_copies = 0;
    EXPECT_THROW(check_plan(p), std::invalid_argument);
    p = ExperimentPlan{};
    p.n_trials = 0;
    EXPECT_THROW(check_plan(p), std::invalid_argument);
    p = ExperimentPlan{};
    p.n_particles = 50;
    EXPECT_THROW(check_plan(p), std::invalid_argument);
}

TEST(RunExperiment, IndependentOfThreadCount) {
    ExperimentPlan p;
    p.protocol = ProtocolSpec{ProtocolKind::kDstAugmentedEqual, 1.25};
    p.n_copies = 50;
    p.n_trials = 8;
    p.n_particles = 200;
    p.seed = 42;
    p.threads = 1;
    ExperimentCurve a = run_experiment(p);
    p.threads = 3;
    ExperimentCurve b = run_experiment(p);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].mean_infidelity, b.points[i].mean_infidelity);
        EXPECT_EQ(a.points[i].stderr_infidelity, b.points[i].stderr_infidelity);
    }
}

TEST(RunExperiment, MubTracksBound) {
    ExperimentPlan p;
    p.protocol = ProtocolSpec{ProtocolKind::kMub};
    p.n_copies = 200;
    p.n_trials = 40;
    p.n_particles = 1000;
    p.seed = 3;
    ExperimentCurve c = run_experiment(p);
    const CurvePoint &last = c.points.back();
    EXPECT_EQ(last.n, 200u);
    double bound = crb(mub_povm()).c_value / 200.0;
    EXPECT_GT(last.mean_infidelity, 0.5 * bound);
    EXPECT_LT(last.mean_infidelity, 2.0 * bound);
    EXPECT_LT(c.points.back().mean_infidelity, c.points.front().mean_infidelity);
}
