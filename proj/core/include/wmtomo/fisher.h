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

// Classical Fisher information of a qubit POVM for the pure-state angles
// (theta, phi_az), and the Cramer-Rao constant C in the large-N average
// fidelity 1 - C/N.

#ifndef WMTOMO_FISHER_H
#define WMTOMO_FISHER_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmtomo/povm.h"
#include "wmtomo/protocols.h"
#include "wmtomo/qcore.h"

namespace wmtomo {

/// Entries of the 2x2 Fisher matrix in (theta, phi_az).
struct FisherPair {
    double j_theta = 0.0;
    double j_phi = 0.0;
    double j_cross = 0.0;
    bool singular = false;  ///< some p_k = 0 with a nonzero derivative.
};

/// Pauli-form evaluation p_k = e0_k + e_k . r(theta, phi_az).
FisherPair fisher_information(std::span<const QubitEffect> effects, const BlochAngles &angles);
FisherPair fisher_information(const DiscretePovm &povm, const BlochAngles &angles);

/// Same quantity from dp_k = 2 Re <d psi| E_k |psi> on the operators directly.
FisherPair fisher_information_general(const DiscretePovm &povm, const BlochAngles &angles);

/// Gauss-Legendre in cos(theta) times midpoint rule in phi_az; no node sits on a pole.
struct SphereQuadrature {
    size_t n_theta = 64;
    size_t n_phi = 128;
};

struct CrbResult {
    double c_value = 0.0;
    bool divergent = false;
    std::string reason;                 ///< empty unless divergent.
    std::optional<Vec3> null_direction; ///< Bloch direction no outcome resolves.
    double integrand_max = 0.0;
    BlochAngles argmax;
    size_t singular_nodes = 0;
    SphereQuadrature quadrature;
};

/// C = (1/4pi) Integral dOmega (1/4) Tr(diag(1, sin^2 theta) J^{-1}), which is
/// (1/4)(1/J_theta + sin^2 theta / J_phi) wherever J_cross = 0. Reported
/// divergent when the effects' Bloch vectors do not span 3 dimensions, when J
/// is singular at a node, or when the running integral exceeds 1e6.
CrbResult crb(std::span<const QubitEffect> effects, const SphereQuadrature &quad = {});
CrbResult crb(const DiscretePovm &povm, const SphereQuadrature &quad = {});
CrbResult crb(const ProtocolSpec &spec, const SphereQuadrature &quad = {});

/// Requires n_bases >= 100.
CrbResult crb_haar_odop(size_t n_bases, Rng &rng, const SphereQuadrature &quad = {});

struct CrbPoint {
    double strength = 0.0;
    double c_value = 0.0;
    bool divergent = false;
};

struct CrbScan {
    std::vector<CrbPoint> points;
    std::optional<size_t> argmin;  ///< smallest C among non-divergent points.
};

/// `base.strength` is overwritten by each grid value. Requires a family with a strength.
CrbScan scan_crb(const ProtocolSpec &base, std::span<const double> strengths, const SphereQuadrature &quad = {});

/// 1 - C/N; requires n_copies >= 1.
double asymptotic_fidelity(double c_value, double n_copies);

}  // namespace wmtomo

#endif
