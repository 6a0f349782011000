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

#include "wmtomo/qcore.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wmtomo {

namespace {

void require_qubit(size_t dim, const char *what) {
    if (dim != 2) {
        throw std::invalid_argument(std::string(what) + " requires a qubit (d = 2), got d = " +
                                    std::to_string(dim));
    }
}

}  // namespace

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= kTolerances.normalization)) {
        throw std::invalid_argument("PureState: amplitudes not normalized (|psi|^2 = " +
                                    std::to_string(norm2) + ")");
    }
}

PureState PureState::normalized(const CVector &v) {
    double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("PureState::normalized: zero or non-finite vector");
    }
    return PureState(v / n);
}

PureState PureState::basis_state(size_t dim, size_t n) {
    if (n >= dim) {
        throw std::out_of_range("PureState::basis_state: index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(n)) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::canonical_phase() const {
    for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) {
        double mag = std::abs(amplitudes_(k));
        if (mag > 1e-12) {
            Complex phase = std::conj(amplitudes_(k)) / mag;
            return PureState::normalized(amplitudes_ * phase);
        }
    }
    return *this;
}

PureState PureState::upsilon_phase() const {
    Complex upsilon = amplitudes_.sum();
    double mag = std::abs(upsilon);
    if (mag <= kTolerances.upsilon_zero) {
        return *this;
    }
    return PureState::normalized(amplitudes_ * (std::conj(upsilon) / mag));
}

DensityOperator::DensityOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityOperator: matrix must be square and nonempty");
    }
    if (hermiticity_error(matrix_) > kTolerances.hermiticity) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace().real() - 1.0) > kTolerances.unit_trace) {
        throw std::invalid_argument("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kTolerances.min_eigenvalue) {
        throw std::invalid_argument("DensityOperator: matrix has a negative eigenvalue");
    }
}

DensityOperator DensityOperator::from_pure(const PureState &state) {
    return DensityOperator(state.projector());
}

DensityOperator DensityOperator::maximally_mixed(size_t dim) {
    return DensityOperator(identity(dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::from_bloch(const Vec3 &r) {
    if (r.norm() > 1.0 + 1e-12) {
        throw std::invalid_argument("DensityOperator::from_bloch: |r| > 1");
    }
    CMatrix m = 0.5 * (identity(2) + r.x() * pauli_x() + r.y() * pauli_y() + r.z() * pauli_z());
    return DensityOperator(std::move(m));
}

BlochAngles::BlochAngles(double theta_in, double phi_in) : theta(theta_in), phi_az(phi_in) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument("BlochAngles: theta outside [0, pi]");
    }
    phi_az = std::fmod(phi_az, 2.0 * kPi);
    if (phi_az < 0.0) {
        phi_az += 2.0 * kPi;
    }
    if (phi_az >= 2.0 * kPi) {
        phi_az = 0.0;
    }
}

Basis::Basis(std::vector<PureState> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) {
        throw std::invalid_argument("Basis: no vectors");
    }
    for (const auto &v : vectors_) {
        if (v.dim() != vectors_.size()) {
            throw std::invalid_argument("Basis: vector count must equal dimension");
        }
    }
    CMatrix m = matrix();
    CMatrix gram = m.adjoint() * m;
    double err = (gram - CMatrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
    if (err > kTolerances.orthonormality) {
        throw std::invalid_argument("Basis: vectors are not orthonormal");
    }
}

CMatrix Basis::matrix() const {
    auto d = static_cast<Eigen::Index>(vectors_.size());
    CMatrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        m.col(j) = vectors_[static_cast<size_t>(j)].amplitudes();
    }
    return m;
}

Basis conjugate_basis(size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("conjugate_basis: dimension must be positive");
    }
    std::vector<PureState> out;
    out.reserve(dim);
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dim));
    for (size_t j = 0; j < dim; ++j) {
        CVector v(static_cast<Eigen::Index>(dim));
        for (size_t n = 0; n < dim; ++n) {
            // Reduce n*j mod d before forming the angle to keep phases exact.
            double angle = 2.0 * kPi * static_cast<double>((n * j) % dim) / static_cast<double>(dim);
            v(static_cast<Eigen::Index>(n)) = std::polar(inv_sqrt, angle);
        }
        out.push_back(PureState::normalized(v));
    }
    return Basis(std::move(out));
}

PureState bloch_to_state(const BlochAngles &angles) {
    CVector v(2);
    v(0) = std::cos(angles.theta / 2.0);
    v(1) = std::polar(std::sin(angles.theta / 2.0), angles.phi_az);
    return PureState::normalized(v);
}

Vec3 bloch_vector(const BlochAngles &a) {
    return {std::sin(a.theta) * std::cos(a.phi_az), std::sin(a.theta) * std::sin(a.phi_az),
            std::cos(a.theta)};
}

Vec3 bloch_vector(const PureState &state) {
    require_qubit(state.dim(), "bloch_vector");
    Complex a = state[0];
    Complex b = state[1];
    Complex ab = std::conj(a) * b;
    return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

Vec3 bloch_vector(const DensityOperator &rho) {
    require_qubit(rho.dim(), "bloch_vector");
    const CMatrix &m = rho.matrix();
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochAngles state_to_bloch(const PureState &state) {
    Vec3 r = bloch_vector(state);
    double z = std::clamp(r.z() / r.norm(), -1.0, 1.0);
    return BlochAngles(std::acos(z), std::atan2(r.y(), r.x()));
}

PureState bloch_vector_to_state(const Vec3 &r) {
    double n = r.norm();
    if (!(n > 0.0)) {
        throw std::invalid_argument("bloch_vector_to_state: zero vector");
    }
    double z = std::clamp(r.z() / n, -1.0, 1.0);
    return bloch_to_state(BlochAngles(std::acos(z), std::atan2(r.y(), r.x())));
}

double fidelity(const PureState &true_state, const DensityOperator &estimate) {
    if (true_state.dim() != estimate.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const CVector &psi = true_state.amplitudes();
    double f = psi.dot(estimate.matrix() * psi).real();
    return std::clamp(f, 0.0, 1.0);
}

double fidelity(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

bool equal_up_to_phase(const PureState &a, const PureState &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    return (a.canonical_phase().amplitudes() - b.canonical_phase().amplitudes()).cwiseAbs().maxCoeff() <=
           tol;
}

PureState haar_random_pure(size_t dim, Rng &rng) {
    if (dim < 2) {
        throw std::invalid_argument("haar_random_pure: dimension must be at least 2");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        double re = normal(rng);
        double im = normal(rng);
        v(k) = Complex(re, im);
    }
    return PureState::normalized(v);
}

Vec3 random_unit_vector(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    while (true) {
        double x = normal(rng);
        double y = normal(rng);
        double z = normal(rng);
        Vec3 v(x, y, z);
        double n = v.norm();
        if (n > 1e-12) {
            return v / n;
        }
    }
}

const CMatrix &pauli_x() {
    static const CMatrix m = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
    return m;
}

const CMatrix &pauli_y() {
    static const CMatrix m = (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}

const CMatrix &pauli_z() {
    static const CMatrix m = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
    return m;
}

CMatrix identity(size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return CMatrix::Identity(d, d);
}

CMatrix basis_projector(size_t dim, size_t n) {
    if (n >= dim) {
        throw std::out_of_range("basis_projector: index out of range");
    }
    auto d = static_cast<Eigen::Index>(dim);
    CMatrix p = CMatrix::Zero(d, d);
    p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = 1.0;
    return p;
}

double hermiticity_error(const CMatrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

uint64_t derive_seed(uint64_t base, uint64_t index) {
    uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace wmtomo
