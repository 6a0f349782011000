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

// Two Gaussian meters of width 1/sqrt(eps) read sigma_z (position q1) and then
// sigma_x (position q2) of a qubit, after which sigma_y is measured
// projectively. Meter positions are in meter units, not units of 1/sqrt(eps).

#ifndef WMTOMO_DASARVIND_H
#define WMTOMO_DASARVIND_H

#include <vector>

#include "wmtomo/povm.h"
#include "wmtomo/qcore.h"

namespace wmtomo {

struct DaConfig {
    double epsilon = 0.575;
    size_t nodes = 41;         ///< Gauss-Legendre nodes per meter axis.
    double range_sigmas = 8.0; ///< grid covers |q| <= range_sigmas / sqrt(eps).
};

void check_config(const DaConfig &config);

/// Raised by discretize() when the quadrature misses more than 1e-4 of the identity.
class GridTooCoarseError : public NumericalError {
   public:
    GridTooCoarseError(const std::string &what, double deficit) : NumericalError(what), deficit_(deficit) {}
    double deficit() const { return deficit_; }

   private:
    double deficit_;
};

/// K(q)/sqrt(dq) = (eps/2pi)^{1/4} e^{-eps(q^2+1)/4} (cosh(eps q/2) + sinh(eps q/2) sigma_j).
/// `axis` must be kZ or kX.
CMatrix meter_kraus_density(MeterAxis axis, double q, double epsilon);

struct PovmDensitySample {
    double q1 = 0.0;
    double q2 = 0.0;
    double g = 0.0;  ///< density over (q1, q2); dE_+- = G (1 + n_+- . sigma)/2 dq1 dq2.
    Vec3 n_plus = Vec3::Zero();
    Vec3 n_minus = Vec3::Zero();
};

PovmDensitySample povm_density(double q1, double q2, double epsilon);

/// Tensor Gauss-Legendre grid over (q1, q2) times {+, -}. Labels carry
/// axis = y, sign = +-1 and cell = i * nodes + j. Throws GridTooCoarseError.
DiscretePovm discretize(const DaConfig &config);

struct DaOutcome {
    double q1 = 0.0;
    double q2 = 0.0;
    int sign = 0;
};

/// Draws the three readings sequentially, updating the state after each meter.
/// The q-marginal of a meter on a qubit with Bloch component r_j is the
/// two-Gaussian mixture ((1 + r_j)/2) N(+1, 1/eps) + ((1 - r_j)/2) N(-1, 1/eps),
/// which is sampled exactly.
DaOutcome sample_measurement(const Vec3 &bloch, double epsilon, Rng &rng);
DaOutcome sample_measurement(const PureState &state, double epsilon, Rng &rng);

/// Likelihood of an outcome as a qubit effect: G (1 + n . sigma)/2.
QubitEffect outcome_effect(const DaOutcome &outcome, double epsilon);

struct WeightedPoint {
    Vec3 n = Vec3::Zero();
    double weight = 0.0;
};

/// n_+(q1, q2) (already in the y >= 0 hemisphere) with weight G * w1 * w2 per grid cell.
std::vector<WeightedPoint> basis_distribution(const DaConfig &config);

/// Fixed 128-cell equal-area partition of the y >= 0 hemisphere: 8 bands of
/// equal width in n_y times 16 sectors of atan2(n_z, n_x). Points with n_y < 0
/// are folded by n -> -n first.
inline constexpr int kHemisphereCells = 128;
int hemisphere_cell(const Vec3 &n);

/// sum_c |p_c - 1/128| over the partition, in [0, 2(1 - 1/128)]. Throws on
/// empty input or weights that do not sum to 1 within 1e-6.
double uniformity_metric(const std::vector<WeightedPoint> &points);

}  // namespace wmtomo

#endif
