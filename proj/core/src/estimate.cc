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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace wmtomo {

namespace {

struct Particles {
    std::vector<Vec3> bloch;
    std::vector<double> weights;
};

double ess(const std::vector<double> &w) {
    double s = 0.0;
    for (double x : w) s += x * x;
    return 1.0 / s;
}

Vec3 weighted_mean(const Particles &p) {
    Vec3 m = Vec3::Zero();
    for (size_t i = 0; i < p.bloch.size(); ++i) m += p.weights[i] * p.bloch[i];
    return m;
}

void reweight(Particles &p, const QubitEffect &effect) {
    if (!(effect.e0 > 0.0) || !std::isfinite(effect.e0)) {
        throw std::invalid_argument("bayes_update: effect has no weight");
    }
    // Likelihood up to a constant factor.
    const Vec3 e = effect.e / effect.e0;
    double total = 0.0;
    for (size_t i = 0; i < p.bloch.size(); ++i) {
        double like = std::max(0.0, 1.0 + e.dot(p.bloch[i]));
        p.weights[i] *= like;
        total += p.weights[i];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw NumericalError("bayes_update: outcome has zero likelihood under every particle");
    }
    for (double &w : p.weights) w /= total;
}

void liu_west(Particles &p, Rng &rng, double a) {
    const size_t n = p.bloch.size();
    const Vec3 mean = weighted_mean(p);
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (size_t i = 0; i < n; ++i) {
        Vec3 d = p.bloch[i] - mean;
        cov += p.weights[i] * d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Eigen::Vector3d scale = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::Matrix3d root = eig.eigenvectors() * scale.asDiagonal();
    const double h = std::sqrt(1.0 - a * a);

    // Systematic resampling of parent indices.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double step = 1.0 / static_cast<double>(n);
    double u = unif(rng) * step;
    double acc = p.weights[0];
    size_t j = 0;
    std::vector<Vec3> next;
    next.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        while (u > acc && j + 1 < n) {
            ++j;
            acc += p.weights[j];
        }
        Vec3 z(normal(rng), normal(rng), normal(rng));
        Vec3 x = a * p.bloch[j] + (1.0 - a) * mean + h * (root * z);
        double len = x.norm();
        next.push_back(len > 1e-12 ? Vec3(x / len) : p.bloch[j]);
        u += step;
    }
    p.bloch = std::move(next);
    std::fill(p.weights.begin(), p.weights.end(), step);
}

void update(Particles &p, const QubitEffect &effect, Rng &rng, const SmcSettings &settings) {
    reweight(p, effect);
    if (ess(p.weights) < settings.resample_threshold * static_cast<double>(p.bloch.size())) {
        liu_west(p, rng, settings.liu_west_a);
    }
}

Vec3 estimate_direction(const Vec3 &mean, bool *degenerate) {
    double len = mean.norm();
    if (len <= 1e-12) {
        if (degenerate) *degenerate = true;
        return Vec3::UnitX();
    }
    if (degenerate) *degenerate = false;
    return mean / len;
}

Particles unpack(const ParticleEnsemble &e) { return {e.bloch(), e.weights()}; }

ParticleEnsemble pack(Particles p) { return ParticleEnsemble(std::move(p.bloch), std::move(p.weights)); }

}  // namespace

ParticleEnsemble::ParticleEnsemble(std::vector<Vec3> bloch, std::vector<double> weights)
    : bloch_(std::move(bloch)), weights_(std::move(weights)) {
    if (bloch_.size() < kMinParticles) {
        throw std::invalid_argument("ParticleEnsemble: at least " + std::to_string(kMinParticles) +
                                    " particles required");
    }
    if (weights_.size() != bloch_.size()) {
        throw std::invalid_argument("ParticleEnsemble: one weight per particle required");
    }
    double total = 0.0;
    for (size_t i = 0; i < bloch_.size(); ++i) {
        if (!(weights_[i] >= 0.0)) throw std::invalid_argument("ParticleEnsemble: negative weight");
        if (std::abs(bloch_[i].norm() - 1.0) > 1e-9) {
            throw std::invalid_argument("ParticleEnsemble: particles must be pure states");
        }
        total += weights_[i];
    }
    // Naive summation rounding grows with n.
    const double tol = std::max(1e-12, 1e-15 * static_cast<double>(bloch_.size()));
    if (std::abs(total - 1.0) > tol) {
        throw std::invalid_argument("ParticleEnsemble: weights must sum to 1");
    }
}

double ParticleEnsemble::effective_sample_size() const { return ess(weights_); }

Vec3 ParticleEnsemble::mean_bloch() const {
    Vec3 m = Vec3::Zero();
    for (size_t i = 0; i < bloch_.size(); ++i) m += weights_[i] * bloch_[i];
    return m;
}

ParticleEnsemble init_prior(size_t n_particles, Rng &rng) {
    if (n_particles < kMinParticles) {
        throw std::invalid_argument("init_prior: at least " + std::to_string(kMinParticles) + " particles required");
    }
    std::vector<Vec3> bloch;
    bloch.reserve(n_particles);
    for (size_t i = 0; i < n_particles; ++i) bloch.push_back(random_unit_vector(rng));
    return ParticleEnsemble(std::move(bloch), std::vector<double>(n_particles, 1.0 / static_cast<double>(n_particles)));
}

ParticleEnsemble bayes_update(const ParticleEnsemble &ensemble, const QubitEffect &effect, Rng &rng,
                              const SmcSettings &settings) {
    Particles p = unpack(ensemble);
    update(p, effect, rng, settings);
    return pack(std::move(p));
}

ParticleEnsemble bayes_update(const ParticleEnsemble &ensemble, const DiscretePovm &povm,
                              const OutcomeLabel &outcome, Rng &rng, const SmcSettings &settings) {
    if (povm.dim() != 2) {
        throw std::invalid_argument("bayes_update: qubit POVM required");
    }
    auto k = povm.find(outcome);
    if (!k) {
        throw std::invalid_argument("bayes_update: outcome " + to_string(outcome) + " not in POVM");
    }
    return bayes_update(ensemble, qubit_effect(povm[*k].op), rng, settings);
}

ParticleEnsemble resample(const ParticleEnsemble &ensemble, Rng &rng, double a) {
    if (!(a > 0.0 && a <= 1.0)) {
        throw std::invalid_argument("resample: shrinkage must lie in (0, 1]");
    }
    Particles p = unpack(ensemble);
    liu_west(p, rng, a);
    return pack(std::move(p));
}

PointEstimate fidelity_optimal_estimate(const ParticleEnsemble &ensemble) {
    bool degenerate = false;
    Vec3 n = estimate_direction(ensemble.mean_bloch(), &degenerate);
    return {DensityOperator::from_bloch(n), n, degenerate};
}

void check_plan(const ExperimentPlan &plan) {
    if (plan.n_copies < 1) throw std::invalid_argument("ExperimentPlan: n_copies must be at least 1");
    if (plan.n_trials < 1) throw std::invalid_argument("ExperimentPlan: n_trials must be at least 1");
    if (plan.n_particles < kMinParticles) {
        throw std::invalid_argument("ExperimentPlan: at least " + std::to_string(kMinParticles) +
                                    " particles required");
    }
}

std::vector<size_t> log_checkpoints(size_t n_copies) {
    std::vector<size_t> out;
    for (size_t decade = 1; decade <= n_copies; decade *= 10) {
        for (size_t m : {1, 2, 5}) {
            size_t n = m * decade;
            if (n < n_copies) out.push_back(n);
        }
        if (decade > n_copies / 10) break;
    }
    out.push_back(n_copies);
    return out;
}

unsigned default_threads() {
    if (const char *env = std::getenv("WMTOMO_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

ExperimentCurve run_experiment(const ExperimentPlan &plan) {
    check_plan(plan);
    const OutcomeSampler sampler = make_sampler(plan.protocol);
    const std::vector<size_t> checkpoints = log_checkpoints(plan.n_copies);
    std::vector<std::vector<double>> infidelity(plan.n_trials, std::vector<double>(checkpoints.size()));

    auto run_trial = [&](size_t t) {
        Rng rng(derive_seed(plan.seed, t));
        const Vec3 truth = random_unit_vector(rng);
        Particles p = unpack(init_prior(plan.n_particles, rng));
        size_t next = 0;
        for (size_t k = 1; k <= plan.n_copies; ++k) {
            update(p, sampler(truth, rng), rng, plan.smc);
            if (k == checkpoints[next]) {
                Vec3 n = estimate_direction(weighted_mean(p), nullptr);
                infidelity[t][next] = 0.5 * (1.0 - truth.dot(n));
                ++next;
            }
        }
    };

    unsigned workers = plan.threads != 0 ? plan.threads : default_threads();
    workers = static_cast<unsigned>(std::min<size_t>(workers, plan.n_trials));
    std::atomic<size_t> counter{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            size_t t = counter.fetch_add(1);
            if (t >= plan.n_trials) return;
            try {
                run_trial(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                counter = plan.n_trials;
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentCurve curve;
    const double trials = static_cast<double>(plan.n_trials);
    for (size_t c = 0; c < checkpoints.size(); ++c) {
        double sum = 0.0;
        for (size_t t = 0; t < plan.n_trials; ++t) sum += infidelity[t][c];
        double mean = sum / trials;
        double ss = 0.0;
        for (size_t t = 0; t < plan.n_trials; ++t) ss += (infidelity[t][c] - mean) * (infidelity[t][c] - mean);
        double se = plan.n_trials > 1 ? std::sqrt(ss / (trials - 1.0) / trials) : 0.0;
        curve.points.push_back({checkpoints[c], mean, se});
    }
    return curve;
}

}  // namespace wmtomo
