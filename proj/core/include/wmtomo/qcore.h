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

#ifndef WMTOMO_QCORE_H
#define WMTOMO_QCORE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wmtomo/tolerances.h"

namespace wmtomo {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

/// Normalized state vector in the reconstruction basis {|n>}.
class PureState {
   public:
    /// Throws std::invalid_argument unless the vector has unit norm.
    explicit PureState(CVector amplitudes);

    /// Rescales `v` to unit norm. Throws on a zero vector.
    static PureState normalized(const CVector &v);
    static PureState basis_state(size_t dim, size_t n);

    size_t dim() const { return static_cast<size_t>(amplitudes_.size()); }
    const CVector &amplitudes() const { return amplitudes_; }
    Complex operator[](size_t n) const { return amplitudes_(static_cast<Eigen::Index>(n)); }

    CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

    /// Same ray with the first non-negligible amplitude real and positive.
    PureState canonical_phase() const;

    /// Same ray with sum_n psi_n real and non-negative (when it is nonzero).
    PureState upsilon_phase() const;

   private:
    CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityOperator {
   public:
    /// Validates Hermiticity, trace and positivity against kTolerances.
    explicit DensityOperator(CMatrix matrix);

    static DensityOperator from_pure(const PureState &state);
    static DensityOperator maximally_mixed(size_t dim);
    /// Qubit state (1 + r.sigma)/2; requires |r| <= 1.
    static DensityOperator from_bloch(const Vec3 &r);

    size_t dim() const { return static_cast<size_t>(matrix_.rows()); }
    const CMatrix &matrix() const { return matrix_; }

   private:
    CMatrix matrix_;
};

/// Polar / azimuthal angles on the Bloch sphere. The azimuth is wrapped into
/// [0, 2pi); a polar angle outside [0, pi] is rejected.
struct BlochAngles {
    double theta = 0.0;
    double phi_az = 0.0;

    BlochAngles() = default;
    BlochAngles(double theta, double phi_az);
};

/// Ordered orthonormal basis.
class Basis {
   public:
    explicit Basis(std::vector<PureState> vectors);

    size_t dim() const { return vectors_.size(); }
    const PureState &operator[](size_t j) const { return vectors_[j]; }
    const std::vector<PureState> &vectors() const { return vectors_; }
    /// Matrix whose j-th column is the j-th basis vector.
    CMatrix matrix() const;

   private:
    std::vector<PureState> vectors_;
};

/// <n|c_j> = omega^{n j} / sqrt(d), omega = exp(2 pi i / d).
Basis conjugate_basis(size_t dim);

/// (cos(theta/2), e^{i phi} sin(theta/2)).
PureState bloch_to_state(const BlochAngles &angles);
BlochAngles state_to_bloch(const PureState &state);
PureState bloch_vector_to_state(const Vec3 &r);

/// (<sigma_x>, <sigma_y>, <sigma_z>) of a qubit state.
Vec3 bloch_vector(const PureState &state);
Vec3 bloch_vector(const DensityOperator &rho);
Vec3 bloch_vector(const BlochAngles &angles);

/// <psi| rho_hat |psi>.
double fidelity(const PureState &true_state, const DensityOperator &estimate);
double fidelity(const PureState &a, const PureState &b);

bool equal_up_to_phase(const PureState &a, const PureState &b, double tol = 1e-10);

/// Unitarily invariant sample: normalized vector of i.i.d. complex Gaussians.
PureState haar_random_pure(size_t dim, Rng &rng);
/// Uniform point on the unit sphere.
Vec3 random_unit_vector(Rng &rng);

const CMatrix &pauli_x();
const CMatrix &pauli_y();
const CMatrix &pauli_z();
CMatrix identity(size_t dim);

/// |n><n| in dimension d.
CMatrix basis_projector(size_t dim, size_t n);

/// max |A - A^dagger| over entries.
double hermiticity_error(const CMatrix &a);

/// Deterministic stream for `index` derived from a base seed (splitmix64).
uint64_t derive_seed(uint64_t base, uint64_t index);

}  // namespace wmtomo

#endif
