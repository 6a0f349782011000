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

#include "wmtomo/povm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wmtomo {

std::string_view axis_name(MeterAxis axis) {
    switch (axis) {
        case MeterAxis::kX:
            return "x";
        case MeterAxis::kY:
            return "y";
        case MeterAxis::kZ:
            return "z";
        case MeterAxis::kNone:
            break;
    }
    return "none";
}

std::string to_string(const OutcomeLabel &label) {
    if (label.discard) {
        return "discard";
    }
    std::ostringstream out;
    const char *sep = "";
    if (label.axis != MeterAxis::kNone) {
        out << sep << "axis=" << axis_name(label.axis);
        sep = ",";
    }
    if (label.sign != 0) {
        out << sep << "sign=" << (label.sign > 0 ? '+' : '-');
        sep = ",";
    }
    if (label.n >= 0) {
        out << sep << "n=" << label.n;
        sep = ",";
    }
    if (label.m >= 0) {
        out << sep << "m=" << label.m;
        sep = ",";
    }
    if (label.cell >= 0) {
        out << sep << "cell=" << label.cell;
        sep = ",";
    }
    std::string s = out.str();
    return s.empty() ? "trivial" : s;
}

OutcomeLabel merge_labels(const OutcomeLabel &first, const OutcomeLabel &second) {
    OutcomeLabel out = first;
    if (second.axis != MeterAxis::kNone) out.axis = second.axis;
    if (second.sign != 0) out.sign = second.sign;
    if (second.m >= 0) out.m = second.m;
    if (second.n >= 0) out.n = second.n;
    if (second.cell >= 0) out.cell = second.cell;
    out.discard = first.discard || second.discard;
    return out;
}

DiscretePovm::DiscretePovm(std::vector<PovmElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("DiscretePovm: no elements");
    }
    dim_ = static_cast<size_t>(elements_.front().op.rows());
    if (dim_ == 0) {
        throw std::invalid_argument("DiscretePovm: zero-dimensional element");
    }
    for (const auto &e : elements_) {
        if (static_cast<size_t>(e.op.rows()) != dim_ || static_cast<size_t>(e.op.cols()) != dim_) {
            throw std::invalid_argument("DiscretePovm: element dimension mismatch");
        }
    }
}

std::optional<size_t> DiscretePovm::find(const OutcomeLabel &label) const {
    for (size_t k = 0; k < elements_.size(); ++k) {
        if (elements_[k].label == label) {
            return k;
        }
    }
    return std::nullopt;
}

CMatrix DiscretePovm::sum() const {
    auto d = static_cast<Eigen::Index>(dim_);
    CMatrix total = CMatrix::Zero(d, d);
    for (const auto &e : elements_) {
        total += e.op;
    }
    return total;
}

ValidationReport validate(const DiscretePovm &povm, const Tolerances &tol) {
    ValidationReport report;
    for (const auto &e : povm.elements()) {
        report.max_hermiticity_error = std::max(report.max_hermiticity_error, hermiticity_error(e.op));
        CMatrix herm = 0.5 * (e.op + e.op.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
        report.max_positivity_violation =
            std::max(report.max_positivity_violation, -es.eigenvalues().minCoeff());
    }
    CMatrix deficit = povm.sum() - identity(povm.dim());
    CMatrix herm = 0.5 * (deficit + deficit.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    report.completeness_deficit = es.eigenvalues().cwiseAbs().maxCoeff();
    report.passed = report.max_hermiticity_error <= tol.hermiticity &&
                    report.max_positivity_violation <= -tol.min_eigenvalue &&
                    report.completeness_deficit <= tol.completeness;
    return report;
}

ValidationReport validate(const DiscretePovm &povm, double completeness_tol) {
    Tolerances tol;
    tol.completeness = completeness_tol;
    return validate(povm, tol);
}

std::vector<double> outcome_probabilities(const DiscretePovm &povm, const DensityOperator &state) {
    return outcome_probabilities(povm, state, kTolerances.completeness);
}

std::vector<double> outcome_probabilities(const DiscretePovm &povm, const DensityOperator &state,
                                          double completeness_tol) {
    if (povm.dim() != state.dim()) {
        throw std::invalid_argument("outcome_probabilities: dimension mismatch");
    }
    ValidationReport report = validate(povm, completeness_tol);
    if (!report.passed) {
        throw std::invalid_argument("outcome_probabilities: invalid POVM (completeness deficit " +
                                    std::to_string(report.completeness_deficit) + ")");
    }
    std::vector<double> probs;
    probs.reserve(povm.size());
    for (const auto &e : povm.elements()) {
        double p = (state.matrix() * e.op).trace().real();
        if (p < 0.0 && p >= kTolerances.probability_floor) {
            p = 0.0;
        }
        probs.push_back(std::max(p, 0.0));
    }
    return probs;
}

size_t sample_outcome_index(const DiscretePovm &povm, const DensityOperator &state, Rng &rng) {
    std::vector<double> probs = outcome_probabilities(povm, state, kTolerances.quadrature_completeness);
    double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::uniform_real_distribution<double> unif(0.0, total);
    double u = unif(rng);
    double acc = 0.0;
    for (size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) {
            return k;
        }
    }
    // u landed on the rounding gap at the top end: last outcome with mass.
    for (size_t k = probs.size(); k-- > 0;) {
        if (probs[k] > 0.0) {
            return k;
        }
    }
    return probs.size() - 1;
}

const OutcomeLabel &sample_outcome(const DiscretePovm &povm, const DensityOperator &state, Rng &rng) {
    return povm[sample_outcome_index(povm, state, rng)].label;
}

namespace {

void compose_paths(std::span<const KrausStage> stages, size_t depth, const CMatrix &accum,
                   const OutcomeLabel &label, double weight, std::vector<PovmElement> &out) {
    if (depth == stages.size()) {
        out.push_back({label, weight * (accum.adjoint() * accum)});
        return;
    }
    for (const auto &factor : stages[depth]) {
        if (factor.op.rows() != accum.cols() || factor.op.cols() != accum.cols()) {
            throw std::invalid_argument("compose_kraus: stage dimensions incompatible");
        }
        compose_paths(stages, depth + 1, factor.op * accum, merge_labels(label, factor.label),
                      weight * factor.weight, out);
    }
}

}  // namespace

DiscretePovm compose_kraus(std::span<const KrausStage> stages, double completeness_tol) {
    if (stages.empty() || stages.front().empty()) {
        throw std::invalid_argument("compose_kraus: no stages");
    }
    auto d = stages.front().front().op.cols();
    std::vector<PovmElement> elements;
    compose_paths(stages, 0, CMatrix::Identity(d, d), OutcomeLabel{}, 1.0, elements);
    DiscretePovm povm(std::move(elements));
    ValidationReport report = validate(povm, completeness_tol);
    if (report.completeness_deficit > completeness_tol) {
        throw IncompletePovmError("compose_kraus: composed elements are not complete (deficit " +
                                      std::to_string(report.completeness_deficit) + ")",
                                  report.completeness_deficit);
    }
    return povm;
}

DiscretePovm mix(std::span<const std::pair<double, DiscretePovm>> parts) {
    std::vector<PovmElement> elements;
    double total = 0.0;
    for (const auto &[w, povm] : parts) {
        if (w < 0.0) {
            throw std::invalid_argument("mix: negative weight");
        }
        total += w;
        if (w == 0.0) {
            continue;
        }
        for (const auto &e : povm.elements()) {
            elements.push_back({e.label, w * e.op});
        }
    }
    if (std::abs(total - 1.0) > kTolerances.probability_sum) {
        throw std::invalid_argument("mix: weights must sum to 1");
    }
    return DiscretePovm(std::move(elements));
}

QubitEffect qubit_effect(const CMatrix &op) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("qubit_effect: operator must be 2x2");
    }
    QubitEffect q;
    q.e0 = 0.5 * (op(0, 0) + op(1, 1)).real();
    // Tr(E sigma_x) = E01 + E10, Tr(E sigma_y) = i(E01 - E10), Tr(E sigma_z) = E00 - E11.
    q.e = Vec3(0.5 * (op(0, 1) + op(1, 0)).real(), 0.5 * (Complex(0, 1) * (op(0, 1) - op(1, 0))).real(),
               0.5 * (op(0, 0) - op(1, 1)).real());
    return q;
}

std::vector<QubitEffect> qubit_effects(const DiscretePovm &povm) {
    std::vector<QubitEffect> out;
    out.reserve(povm.size());
    for (const auto &e : povm.elements()) {
        out.push_back(qubit_effect(e.op));
    }
    return out;
}

CMatrix qubit_operator(const QubitEffect &q) {
    return q.e0 * identity(2) + q.e.x() * pauli_x() + q.e.y() * pauli_y() + q.e.z() * pauli_z();
}

OdopResult random_odop_decomposition(const DiscretePovm &povm, const OdopTolerance &tol) {
    if (povm.dim() != 2) {
        throw std::invalid_argument("random_odop_decomposition: qubit POVM required");
    }
    struct Item {
        size_t index;
        double weight;
        Vec3 axis;
    };
    OdopResult result;
    std::vector<Item> items;
    for (size_t k = 0; k < povm.size(); ++k) {
        QubitEffect q = qubit_effect(povm[k].op);
        double trace = 2.0 * q.e0;
        if (trace < tol.negligible) {
            ++result.dropped;
            continue;
        }
        double len = q.e.norm();
        // Eigenvalues are e0 +/- |e|; rank one iff the smaller is ~0.
        if (q.e0 - len > kTolerances.rank_one * trace) {
            throw NotRankOneError("random_odop_decomposition: element " + std::to_string(k) + " (" +
                                  to_string(povm[k].label) + ") is not rank-one");
        }
        items.push_back({k, trace, q.e / len});
    }

    auto lex_less = [](const Vec3 &a, const Vec3 &b) {
        if (a.x() != b.x()) return a.x() < b.x();
        if (a.y() != b.y()) return a.y() < b.y();
        return a.z() < b.z();
    };
    std::sort(items.begin(), items.end(), [&](const Item &a, const Item &b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return lex_less(a.axis, b.axis);
    });

    std::vector<bool> used(items.size(), false);
    for (size_t i = 0; i < items.size(); ++i) {
        if (used[i]) {
            continue;
        }
        const Item &a = items[i];
        bool matched = false;
        for (size_t j = i + 1; j < items.size(); ++j) {
            const Item &b = items[j];
            if (a.weight - b.weight > tol.weight * a.weight) {
                break;
            }
            if (used[j]) {
                continue;
            }
            if ((a.axis + b.axis).norm() <= tol.antipode) {
                used[i] = used[j] = true;
                OdopPair pair;
                pair.weight = 0.5 * (a.weight + b.weight);
                pair.axis = a.axis;
                pair.plus_index = a.index;
                pair.minus_index = b.index;
                result.decomposition.pairs.push_back(pair);
                matched = true;
                break;
            }
        }
        if (!matched) {
            result.unmatched.push_back(a.index);
        }
    }
    std::sort(result.unmatched.begin(), result.unmatched.end());
    result.success = result.unmatched.empty() && !result.decomposition.pairs.empty();
    return result;
}

CMatrix reconstruct_from_odop(const OdopDecomposition &decomposition) {
    CMatrix total = CMatrix::Zero(2, 2);
    for (const auto &p : decomposition.pairs) {
        CMatrix proj = 0.5 * (identity(2) + p.axis.x() * pauli_x() + p.axis.y() * pauli_y() +
                              p.axis.z() * pauli_z());
        total += p.weight * (proj + (identity(2) - proj));
    }
    return total;
}

std::vector<Vec3> tetrahedron_axes() {
    double s = 1.0 / std::sqrt(3.0);
    return {Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)};
}

DiscretePovm tetrahedron_povm() {
    std::vector<PovmElement> elements;
    auto axes = tetrahedron_axes();
    for (size_t k = 0; k < axes.size(); ++k) {
        OutcomeLabel label;
        label.cell = static_cast<int>(k);
        elements.push_back({label, qubit_operator({0.25, 0.25 * axes[k]})});
    }
    return DiscretePovm(std::move(elements));
}

DiscretePovm projective_povm(const Basis &basis) {
    std::vector<PovmElement> elements;
    for (size_t j = 0; j < basis.dim(); ++j) {
        OutcomeLabel label;
        label.cell = static_cast<int>(j);
        elements.push_back({label, basis[j].projector()});
    }
    return DiscretePovm(std::move(elements));
}

DiscretePovm axis_odop_povm(std::span<const Vec3> axes) {
    if (axes.empty()) {
        throw std::invalid_argument("axis_odop_povm: no axes");
    }
    double w = 1.0 / static_cast<double>(axes.size());
    std::vector<PovmElement> elements;
    elements.reserve(2 * axes.size());
    for (size_t k = 0; k < axes.size(); ++k) {
        Vec3 n = axes[k].normalized();
        for (int sign : {+1, -1}) {
            OutcomeLabel label;
            label.cell = static_cast<int>(k);
            label.sign = sign;
            elements.push_back({label, qubit_operator({0.5 * w, 0.5 * w * sign * n})});
        }
    }
    return DiscretePovm(std::move(elements));
}

DiscretePovm mub_povm() {
    std::vector<PovmElement> elements;
    const std::pair<MeterAxis, Vec3> axes[] = {
        {MeterAxis::kX, Vec3::UnitX()}, {MeterAxis::kY, Vec3::UnitY()}, {MeterAxis::kZ, Vec3::UnitZ()}};
    for (const auto &[axis, n] : axes) {
        for (int sign : {+1, -1}) {
            OutcomeLabel label;
            label.axis = axis;
            label.sign = sign;
            elements.push_back({label, qubit_operator({1.0 / 6.0, (sign / 6.0) * n})});
        }
    }
    return DiscretePovm(std::move(elements));
}

DiscretePovm haar_odop_povm(size_t n_bases, Rng &rng) {
    std::vector<Vec3> axes;
    axes.reserve(n_bases);
    for (size_t k = 0; k < n_bases; ++k) {
        axes.push_back(random_unit_vector(rng));
    }
    return axis_odop_povm(axes);
}

}  // namespace wmtomo
