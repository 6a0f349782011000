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

#include <gtest/gtest.h>

#include "oracles.h"

using namespace wmtomo;

TEST(ConjugateBasis, QubitIsSigmaXEigenbasis) {
    Basis b = conjugate_basis(2);
    double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(b[0][0] - s), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b[0][1] - s), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b[1][0] - s), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b[1][1] + s), 0.0, 1e-15);
}

TEST(ConjugateBasis, DimensionOne) {
    Basis b = conjugate_basis(1);
    ASSERT_EQ(b.dim(), 1u);
    EXPECT_NEAR(std::abs(b[0][0] - 1.0), 0.0, 1e-15);
}

TEST(ConjugateBasis, ZeroRejected) { EXPECT_THROW(conjugate_basis(0), std::invalid_argument); }

TEST(ConjugateBasis, UnitaryUpToEight) {
    for (size_t d = 2; d <= 8; ++d) {
        CMatrix u = conjugate_basis(d).matrix();
        double err = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
        EXPECT_LE(err, 1e-12) << "d = " << d;
        for (size_t j = 0; j < d; ++j) {
            CVector ref = oracle::dft_vector(j, d);
            EXPECT_LE((u.col(static_cast<Eigen::Index>(j)) - ref).norm(), 1e-12);
        }
    }
}

TEST(BlochToState, Poles) {
    EXPECT_TRUE(equal_up_to_phase(bloch_to_state({0.0, 0.0}), PureState::basis_state(2, 0)));
    EXPECT_TRUE(equal_up_to_phase(bloch_to_state({kPi, 1.234}), PureState::basis_state(2, 1)));
}

TEST(BlochToState, PlusY) {
    PureState s = bloch_to_state({kPi / 2, kPi / 2});
    CVector ref(2);
    ref << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
    EXPECT_LE((s.amplitudes() - ref).norm(), 1e-12);
    Vec3 r = bloch_vector(s);
    EXPECT_NEAR(r.y(), 1.0, 1e-12);
}

TEST(BlochToState, RoundTripsRandomStates) {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        PureState psi = haar_random_pure(2, rng);
        PureState back = bloch_to_state(state_to_bloch(psi));
        ASSERT_TRUE(equal_up_to_phase(psi, back, 1e-10));
        ASSERT_TRUE(equal_up_to_phase(psi, bloch_vector_to_state(bloch_vector(psi)), 1e-10));
    }
}

TEST(BlochAngles, WrapsAzimuthAndRejectsPolar) {
    BlochAngles a(1.0, -kPi / 2);
    EXPECT_NEAR(a.phi_az, 1.5 * kPi, 1e-14);
    EXPECT_THROW(BlochAngles(-0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(BlochAngles(kPi + 0.1, 0.0), std::invalid_argument);
}

TEST(Fidelity, Examples) {
    Rng rng(3);
    PureState psi = haar_random_pure(3, rng);
    EXPECT_NEAR(fidelity(psi, DensityOperator::from_pure(psi)), 1.0, 1e-12);
    PureState zero = PureState::basis_state(2, 0);
    EXPECT_NEAR(fidelity(zero, DensityOperator::from_pure(PureState::basis_state(2, 1))), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(zero, DensityOperator::maximally_mixed(2)), 0.5, 1e-15);
    EXPECT_THROW(fidelity(zero, DensityOperator::maximally_mixed(3)), std::invalid_argument);
}

TEST(Fidelity, LinearInEstimate) {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        PureState psi = haar_random_pure(3, rng);
        CMatrix r1 = haar_random_pure(3, rng).projector();
        CMatrix r2 = haar_random_pure(3, rng).projector();
        double a = std::uniform_real_distribution<double>(0, 1)(rng);
        double lhs = fidelity(psi, DensityOperator(a * r1 + (1 - a) * r2));
        double rhs = a * fidelity(psi, DensityOperator(r1)) + (1 - a) * fidelity(psi, DensityOperator(r2));
        EXPECT_NEAR(lhs, rhs, 1e-12);
    }
}

TEST(HaarRandomPure, QubitMoments) {
    Rng rng(2024);
    Vec3 mean = Vec3::Zero();
    double z2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Vec3 r = bloch_vector(haar_random_pure(2, rng));
        mean += r;
        z2 += r.z() * r.z();
    }
    mean /= n;
    EXPECT_LT(mean.norm(), 0.02);
    EXPECT_NEAR(z2 / n, 1.0 / 3.0, 0.02);
}

TEST(HaarRandomPure, Deterministic) {
    Rng a(99), b(99);
    for (int i = 0; i < 20; ++i) {
        PureState x = haar_random_pure(4, a);
        PureState y = haar_random_pure(4, b);
        ASSERT_EQ(x.amplitudes(), y.amplitudes());
    }
}

TEST(HaarRandomPure, RejectsDimensionOne) {
    Rng rng(1);
    EXPECT_THROW(haar_random_pure(1, rng), std::invalid_argument);
}

TEST(PureState, RejectsUnnormalized) {
    CVector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, std::invalid_argument);
    EXPECT_NO_THROW(PureState::normalized(v));
    EXPECT_THROW(PureState::normalized(CVector::Zero(2)), std::invalid_argument);
}

TEST(PureState, PhaseConventions) {
    CVector v(3);
    v << Complex(0, 1), Complex(1, 1), Complex(-1, 0.5);
    PureState psi = PureState::normalized(v);
    PureState c = psi.canonical_phase();
    EXPECT_NEAR(c[0].imag(), 0.0, 1e-15);
    EXPECT_GT(c[0].real(), 0.0);
    PureState u = psi.upsilon_phase();
    Complex ups = u.amplitudes().sum();
    EXPECT_NEAR(ups.imag(), 0.0, 1e-14);
    EXPECT_GT(ups.real(), 0.0);
    EXPECT_TRUE(equal_up_to_phase(psi, u));
}

TEST(DensityOperator, Validation) {
    CMatrix m(2, 2);
    m << 0.5, 0.3, 0.1, 0.5;
    EXPECT_THROW(DensityOperator{m}, std::invalid_argument);
    m << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityOperator{m}, std::invalid_argument);
    m << 0.6, 0.0, 0.0, 0.6;
    EXPECT_THROW(DensityOperator{m}, std::invalid_argument);
    EXPECT_THROW(DensityOperator::from_bloch(Vec3(1, 1, 0)), std::invalid_argument);
}

TEST(Bloch, DensityRoundTrip) {
    Vec3 r(0.1, -0.4, 0.3);
    EXPECT_LE((bloch_vector(DensityOperator::from_bloch(r)) - r).norm(), 1e-15);
}

TEST(Pauli, Algebra) {
    CMatrix xy = pauli_x() * pauli_y();
    EXPECT_LE((xy - Complex(0, 1) * pauli_z()).cwiseAbs().maxCoeff(), 1e-15);
    for (int k = 0; k < 3; ++k) {
        const CMatrix &p = k == 0 ? pauli_x() : k == 1 ? pauli_y() : pauli_z();
        EXPECT_LE((p - oracle::pauli(k)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(DeriveSeed, DistinctAndStable) {
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
    EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
    EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}
