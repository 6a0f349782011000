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

// Direct state tomography with a qubit meter prepared in |+>. The system is
// coupled to the meter through exp(-i phi_c |n><n| (x) sigma_z); the meter is
// read out along x, y or z and the system is measured in the conjugate basis.
// Composite operators act on system (x) meter with index 2*s + meter.

#ifndef WMTOMO_DST_H
#define WMTOMO_DST_H

#include <array>
#include <optional>
#include <vector>

#include "wmtomo/povm.h"
#include "wmtomo/qcore.h"

namespace wmtomo {

struct MeterProbs {
    double x = 0.0;
    double y = 0.5;
    double z = 0.5;

    static MeterProbs original() { return {0.0, 0.5, 0.5}; }
    static MeterProbs augmented_equal() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }
    static MeterProbs augmented_half_z() { return {0.25, 0.25, 0.5}; }
};

struct DstConfig {
    size_t dim = 2;
    double phi_c = 0.0;  ///< coupling strength, radians in [0, pi/2].
    MeterProbs meter_probs = MeterProbs::original();
    std::vector<double> basis_probs;  ///< over n; empty means uniform 1/d.
    std::optional<size_t> postselect; ///< keep only conjugate outcome m, merge the rest.
};

/// Throws std::invalid_argument on bad probabilities, phi_c or postselection index.
void check_config(const DstConfig &config);

/// exp(-i phi_c |n><n| (x) sigma_z), a (2d)x(2d) diagonal unitary.
CMatrix interaction_unitary(double phi_c, size_t n, size_t dim);

/// <+-y| U |+> = (1/sqrt2)(1 + (sqrt2 s_+- - 1)|n><n|), s_+- = +-sin(phi_c +- pi/4).
std::array<KrausFactor, 2> meter_kraus_y(double phi_c, size_t n, size_t dim);
/// K_+ = 1 + (cos phi_c - 1)|n><n|, K_- = sin phi_c |n><n|.
std::array<KrausFactor, 2> meter_kraus_x(double phi_c, size_t n, size_t dim);
/// K_+- = (1/sqrt2) exp(-+i phi_c |n><n|): a coin flip followed by a phase unitary.
std::array<KrausFactor, 2> meter_kraus_z(double phi_c, size_t n, size_t dim);

std::array<KrausFactor, 2> meter_kraus(MeterAxis axis, double phi_c, size_t n, size_t dim);

/// Full POVM from the rank-one closed forms (alpha, |b>) of every branch.
DiscretePovm dst_povm(const DstConfig &config);
/// Same POVM obtained by composing meter and conjugate-basis Kraus stages.
DiscretePovm dst_povm_from_kraus(const DstConfig &config);

/// Closed-form branch weight alpha and unit vector |b> for meter outcome `sign`
/// along `axis` followed by conjugate outcome m (element = alpha |b><b|).
struct RankOneBranch {
    double alpha = 0.0;
    CVector vector;
};
RankOneBranch dst_branch(MeterAxis axis, int sign, size_t m, double phi_c, size_t n, size_t dim);

/// Joint distribution from direct evolution of |psi> (x) |+>: entry [meter][m]
/// is the probability of meter outcome (+ = 0, - = 1) along `axis` together
/// with conjugate outcome m.
std::array<std::vector<double>, 2> simulate_dst_circuit(const PureState &state, double phi_c, size_t n,
                                                        MeterAxis axis);

/// Conditional meter statistics for one coupling index n, indexed by conjugate
/// outcome m. Entries with prob_cm = 0 are left at 0.
struct ConditionalRow {
    std::vector<double> exp_y;
    std::vector<double> exp_z;
    std::vector<double> prob_cm;
};

struct ConditionalStats {
    double phi_c = 0.0;
    Complex upsilon;            ///< sum_n psi_n after fixing the phase (real >= 0).
    bool upsilon_zero = false;  ///< reconstruction undefined.
    std::vector<ConditionalRow> rows;  ///< rows[n]

    size_t dim() const { return rows.size(); }
};

/// Closed form at c_0 shifted to c_m, cross-checked against the circuit.
/// Throws NumericalError if the two routes disagree beyond 1e-10.
ConditionalRow conditional_stats(const PureState &state, double phi_c, size_t n);
ConditionalStats conditional_stats(const PureState &state, double phi_c);

/// Z^{-m}|psi> = sum_n omega^{-mn} psi_n |n>.
PureState postselection_shift(const PureState &state, size_t m);

enum class ReconstructionMode { kPostselectedC0, kAllOutcomes };

/// psi_n proportional to <sigma_y> + i<sigma_z> (rephased by omega^{mn} and
/// averaged over m in kAllOutcomes mode); normalized rather than using a
/// separately estimated Upsilon.
PureState reconstruct_weak(const ConditionalStats &stats, ReconstructionMode mode);

/// Statistics of the augmented protocol: conditional y/z data plus, per n, the
/// probability of the (-) sigma_x meter branch together with any single c_m.
struct AugmentedStats {
    ConditionalStats stats;
    std::vector<double> minus_x_freq;
};

AugmentedStats exact_augmented_stats(const PureState &state, double phi_c);

/// Exact inversion valid for every phi_c in (0, pi/2]:
/// |psi_n|^2 = d f_n / sin^2 phi_c, then Re/Im(psi_n Upsilon*) from the
/// conditional expectations, then psi_n = (psi_n Upsilon*) / |Upsilon|.
PureState reconstruct_exact_augmented(const AugmentedStats &data);

}  // namespace wmtomo

#endif
