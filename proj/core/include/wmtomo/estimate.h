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

// Sequential Monte Carlo posterior over pure qubit states, stored as Bloch
// vectors on the unit sphere.

#ifndef WMTOMO_ESTIMATE_H
#define WMTOMO_ESTIMATE_H

#include <cstdint>
#include <vector>

#include "wmtomo/povm.h"
#include "wmtomo/protocols.h"
#include "wmtomo/qcore.h"

namespace wmtomo {

inline constexpr size_t kMinParticles = 100;

class ParticleEnsemble {
   public:
    /// Requires at least 100 unit vectors and nonnegative weights summing to 1 within max(1e-12, 1e-15 n).
    ParticleEnsemble(std::vector<Vec3> bloch, std::vector<double> weights);

    size_t size() const { return bloch_.size(); }
    const std::vector<Vec3> &bloch() const { return bloch_; }
    const std::vector<double> &weights() const { return weights_; }
    PureState particle(size_t i) const { return bloch_vector_to_state(bloch_[i]); }

    /// 1 / sum w^2.
    double effective_sample_size() const;
    Vec3 mean_bloch() const;

   private:
    std::vector<Vec3> bloch_;
    std::vector<double> weights_;
};

/// Haar-uniform particles with uniform weights.
ParticleEnsemble init_prior(size_t n_particles, Rng &rng);

struct SmcSettings {
    double liu_west_a = 0.98;
    double resample_threshold = 0.5;  ///< fraction of the particle count.
};

/// Reweights by Tr(|psi_i><psi_i| E) and resamples when the effective sample
/// size drops below the threshold. Throws NumericalError if every weight vanishes.
ParticleEnsemble bayes_update(const ParticleEnsemble &ensemble, const QubitEffect &effect, Rng &rng,
                              const SmcSettings &settings = {});
/// Throws std::invalid_argument if no element carries `outcome`.
ParticleEnsemble bayes_update(const ParticleEnsemble &ensemble, const DiscretePovm &povm,
                              const OutcomeLabel &outcome, Rng &rng, const SmcSettings &settings = {});

/// Liu-West kernel resampling in Bloch coordinates: x' = a x_j + (1 - a) mean +
/// N(0, (1 - a^2) cov), projected back to the unit sphere; weights reset to uniform.
ParticleEnsemble resample(const ParticleEnsemble &ensemble, Rng &rng, double a = 0.98);

struct PointEstimate {
    DensityOperator state;
    Vec3 bloch;
    bool degenerate = false;  ///< top eigenvalue of the posterior mean was not unique.
};

/// Top eigenvector of the posterior mean state, i.e. the direction of the mean
/// Bloch vector. A vanishing mean picks the lexicographically largest Bloch
/// vector, +x.
PointEstimate fidelity_optimal_estimate(const ParticleEnsemble &ensemble);

struct ExperimentPlan {
    ProtocolSpec protocol;
    size_t n_copies = 1000;
    size_t n_trials = 500;
    size_t n_particles = 4000;
    uint64_t seed = 0;
    unsigned threads = 0;  ///< 0: WMTOMO_THREADS, else hardware concurrency.
    SmcSettings smc;
};

void check_plan(const ExperimentPlan &plan);

struct CurvePoint {
    size_t n = 0;
    double mean_infidelity = 0.0;
    double stderr_infidelity = 0.0;
};

struct ExperimentCurve {
    std::vector<CurvePoint> points;
};

/// 1, 2, 5, 10, 20, 50, ... up to n_copies, always ending at n_copies.
std::vector<size_t> log_checkpoints(size_t n_copies);

/// Each trial draws a Haar-random true state with its own generator seeded by
/// derive_seed(seed, trial); results are reduced in trial order, so the curve
/// does not depend on the thread count.
ExperimentCurve run_experiment(const ExperimentPlan &plan);

/// Worker count used when plan.threads is 0.
unsigned default_threads();

}  // namespace wmtomo

#endif
