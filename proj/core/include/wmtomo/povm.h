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

#ifndef WMTOMO_POVM_H
#define WMTOMO_POVM_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wmtomo/qcore.h"

namespace wmtomo {

enum class MeterAxis : uint8_t { kNone, kX, kY, kZ };

std::string_view axis_name(MeterAxis axis);

/// Structured outcome tag. Fields that do not apply keep their defaults, so
/// estimators can condition on (axis, sign, m, n) without parsing strings.
struct OutcomeLabel {
    MeterAxis axis = MeterAxis::kNone;
    int sign = 0;   ///< +1 / -1 meter or projector outcome, 0 if not applicable.
    int m = -1;     ///< conjugate-basis outcome index.
    int n = -1;     ///< reconstruction-basis index of the coupling.
    int cell = -1;  ///< generic index: basis vector, grid cell, tetrahedron vertex.
    bool discard = false;

    bool operator==(const OutcomeLabel &) const = default;
};

std::string to_string(const OutcomeLabel &label);

/// Later-stage fields override earlier ones wherever they are set.
OutcomeLabel merge_labels(const OutcomeLabel &first, const OutcomeLabel &second);

struct PovmElement {
    OutcomeLabel label;
    CMatrix op;
};

/// Ordered list of labeled positive operators of a common dimension. Construction
/// checks shape only; use validate() for positivity and completeness.
class DiscretePovm {
   public:
    explicit DiscretePovm(std::vector<PovmElement> elements);

    size_t dim() const { return dim_; }
    size_t size() const { return elements_.size(); }
    const std::vector<PovmElement> &elements() const { return elements_; }
    const PovmElement &operator[](size_t k) const { return elements_[k]; }

    std::optional<size_t> find(const OutcomeLabel &label) const;
    CMatrix sum() const;

   private:
    std::vector<PovmElement> elements_;
    size_t dim_ = 0;
};

struct ValidationReport {
    double max_positivity_violation = 0.0;  ///< max(0, -lambda_min) over elements.
    double max_hermiticity_error = 0.0;
    double completeness_deficit = 0.0;      ///< spectral norm of sum E - 1.
    bool passed = false;
};

ValidationReport validate(const DiscretePovm &povm, const Tolerances &tol = kTolerances);
ValidationReport validate(const DiscretePovm &povm, double completeness_tol);

/// Tr(rho E_k); entries in [probability_floor, 0) are clamped to 0. Throws on
/// invalid POVMs or mismatched dimensions.
std::vector<double> outcome_probabilities(const DiscretePovm &povm, const DensityOperator &state);
std::vector<double> outcome_probabilities(const DiscretePovm &povm, const DensityOperator &state,
                                          double completeness_tol);

/// Index of the sampled outcome.
size_t sample_outcome_index(const DiscretePovm &povm, const DensityOperator &state, Rng &rng);
const OutcomeLabel &sample_outcome(const DiscretePovm &povm, const DensityOperator &state, Rng &rng);

/// One branch of an instrument; `weight` is the probability that the branch
/// family containing it was selected.
struct KrausFactor {
    CMatrix op;
    OutcomeLabel label;
    double weight = 1.0;
};

using KrausStage = std::vector<KrausFactor>;

/// Raised by compose_kraus when the composed elements do not sum to the identity.
class IncompletePovmError : public NumericalError {
   public:
    IncompletePovmError(const std::string &what, double deficit)
        : NumericalError(what), deficit_(deficit) {}
    double deficit() const { return deficit_; }

   private:
    double deficit_;
};

/// Stages are applied in order (stage 0 acts first). For every path that picks
/// one factor per stage, the element is (prod w) * K^dagger K with
/// K = K_last ... K_first.
DiscretePovm compose_kraus(std::span<const KrausStage> stages, double completeness_tol = 1e-10);

/// Convex mixture: each POVM's elements scaled by its probability.
DiscretePovm mix(std::span<const std::pair<double, DiscretePovm>> parts);

/// Qubit operator in Pauli form, E = e0 * 1 + e . sigma, so Tr(rho E) = e0 + e . r.
struct QubitEffect {
    double e0 = 0.0;
    Vec3 e = Vec3::Zero();

    double probability(const Vec3 &r) const { return e0 + e.dot(r); }
};

QubitEffect qubit_effect(const CMatrix &op);
std::vector<QubitEffect> qubit_effects(const DiscretePovm &povm);
CMatrix qubit_operator(const QubitEffect &effect);

struct OdopPair {
    double weight = 0.0;  ///< a for the pair {a(1+n.sigma)/2, a(1-n.sigma)/2}.
    Vec3 axis = Vec3::Zero();
    size_t plus_index = 0;
    size_t minus_index = 0;
};

struct OdopDecomposition {
    std::vector<OdopPair> pairs;
};

struct OdopResult {
    bool success = false;
    OdopDecomposition decomposition;   ///< matched pairs (complete only on success).
    std::vector<size_t> unmatched;     ///< indices into the POVM of unpaired elements.
    size_t dropped = 0;                ///< elements below the negligible-weight cut.
};

class NotRankOneError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct OdopTolerance {
    double weight = kTolerances.odop_weight;
    double antipode = kTolerances.odop_antipode;
    double negligible = kTolerances.negligible_weight;
};

/// Sorts a qubit POVM into equally weighted orthogonal projector pairs.
/// Greedy: elements are visited by decreasing weight (ties in lexicographic
/// Bloch order) and each takes the first unmatched antipodal partner of equal
/// weight. Throws NotRankOneError for any rank-2 element.
OdopResult random_odop_decomposition(const DiscretePovm &povm, const OdopTolerance &tol = {});

/// Sum_k w_k (P_k + P_k^perp); equals the identity for a successful decomposition.
CMatrix reconstruct_from_odop(const OdopDecomposition &decomposition);

/// (1/4)(1 + n_k.sigma) with tetrahedral n_k.
DiscretePovm tetrahedron_povm();
std::vector<Vec3> tetrahedron_axes();

/// Rank-one projectors onto the vectors of `basis`.
DiscretePovm projective_povm(const Basis &basis);

/// Equal-weight random ODOP over the given Bloch axes: elements
/// (1/K)(1 +/- n_k.sigma)/2.
DiscretePovm axis_odop_povm(std::span<const Vec3> axes);

/// Pauli x, y and z projector pairs with weight 1/3 each.
DiscretePovm mub_povm();

/// n_bases Haar-random projector pairs with equal weights.
DiscretePovm haar_odop_povm(size_t n_bases, Rng &rng);

/// JSON document: {"dim": d, "elements": [{"label": {...}, "matrix": [[[re, im], ...], ...]}]}.
std::string povm_to_json(const DiscretePovm &povm);
DiscretePovm povm_from_json(std::string_view text);

}  // namespace wmtomo

#endif
