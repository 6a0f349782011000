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

#include "wmtomo/dst.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wmtomo {

namespace {

constexpr double kUndefinedProbability = 1e-14;
constexpr double kRouteAgreement = 1e-10;

Complex omega_power(long long k, size_t dim) {
    auto d = static_cast<long long>(dim);
    long long r = ((k % d) + d) % d;
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(dim));
}

void check_index(size_t n, size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("dst: dimension must be positive");
    }
    if (n >= dim) {
        throw std::out_of_range("dst: reconstruction index n = " + std::to_string(n) +
                                " out of range for d = " + std::to_string(dim));
    }
}

double axis_prob(const MeterProbs &p, MeterAxis axis) {
    switch (axis) {
        case MeterAxis::kX:
            return p.x;
        case MeterAxis::kY:
            return p.y;
        case MeterAxis::kZ:
            return p.z;
        case MeterAxis::kNone:
            break;
    }
    return 0.0;
}

std::vector<double> basis_probs_of(const DstConfig &config) {
    if (config.basis_probs.empty()) {
        return std::vector<double>(config.dim, 1.0 / static_cast<double>(config.dim));
    }
    return config.basis_probs;
}

/// Meter eigenvector for outcome index 0 (+) or 1 (-).
CVector meter_vector(MeterAxis axis, int outcome) {
    CVector v(2);
    double s = 1.0 / std::sqrt(2.0);
    switch (axis) {
        case MeterAxis::kX:
            v << s, (outcome == 0 ? s : -s);
            break;
        case MeterAxis::kY: {
            // |+-y> = (e^{-+i pi/4}|0> + e^{+-i pi/4}|1>)/sqrt2
            double sign = outcome == 0 ? 1.0 : -1.0;
            v << std::polar(s, -sign * kPi / 4.0), std::polar(s, sign * kPi / 4.0);
            break;
        }
        case MeterAxis::kZ:
            v << (outcome == 0 ? 1.0 : 0.0), (outcome == 0 ? 0.0 : 1.0);
            break;
        case MeterAxis::kNone:
            throw std::invalid_argument("meter_vector: no axis");
    }
    return v;
}

/// a (x) b with index i * b.size() + j.
CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

DiscretePovm apply_postselection(DiscretePovm povm, const DstConfig &config) {
    if (!config.postselect) {
        return povm;
    }
    int keep = static_cast<int>(*config.postselect);
    auto d = static_cast<Eigen::Index>(config.dim);
    std::vector<PovmElement> kept;
    PovmElement discard{OutcomeLabel{}, CMatrix::Zero(d, d)};
    discard.label.discard = true;
    for (const auto &e : povm.elements()) {
        if (e.label.m == keep) {
            kept.push_back(e);
        } else {
            discard.op += e.op;
        }
    }
    kept.push_back(std::move(discard));
    return DiscretePovm(std::move(kept));
}

template <typename Fn>
void for_each_branch(const DstConfig &config, Fn &&fn) {
    std::vector<double> pn = basis_probs_of(config);
    for (size_t n = 0; n < config.dim; ++n) {
        if (pn[n] == 0.0) continue;
        for (MeterAxis axis : {MeterAxis::kX, MeterAxis::kY, MeterAxis::kZ}) {
            double pa = axis_prob(config.meter_probs, axis);
            if (pa == 0.0) continue;
            fn(n, axis, pa * pn[n]);
        }
    }
}

}  // namespace

void check_config(const DstConfig &config) {
    if (config.dim < 2) {
        throw std::invalid_argument("DstConfig: dimension must be at least 2");
    }
    if (!(config.phi_c >= 0.0 && config.phi_c <= kPi / 2.0 + 1e-12)) {
        throw std::invalid_argument("DstConfig: phi_c must lie in [0, pi/2]");
    }
    const MeterProbs &mp = config.meter_probs;
    if (mp.x < 0.0 || mp.y < 0.0 || mp.z < 0.0 ||
        std::abs(mp.x + mp.y + mp.z - 1.0) > kTolerances.probability_sum) {
        throw std::invalid_argument("DstConfig: meter probabilities must be nonnegative and sum to 1");
    }
    if (!config.basis_probs.empty()) {
        if (config.basis_probs.size() != config.dim) {
            throw std::invalid_argument("DstConfig: basis_probs must have d entries");
        }
        double total = 0.0;
        for (double p : config.basis_probs) {
            if (p < 0.0) throw std::invalid_argument("DstConfig: negative basis probability");
            total += p;
        }
        if (std::abs(total - 1.0) > kTolerances.probability_sum) {
            throw std::invalid_argument("DstConfig: basis probabilities must sum to 1");
        }
    }
    if (config.postselect && *config.postselect >= config.dim) {
        throw std::invalid_argument("DstConfig: postselection index out of range");
    }
}

CMatrix interaction_unitary(double phi_c, size_t n, size_t dim) {
    check_index(n, dim);
    auto size = static_cast<Eigen::Index>(2 * dim);
    CMatrix u = CMatrix::Zero(size, size);
    for (size_t s = 0; s < dim; ++s) {
        for (int meter = 0; meter < 2; ++meter) {
            auto idx = static_cast<Eigen::Index>(2 * s + static_cast<size_t>(meter));
            double z = meter == 0 ? 1.0 : -1.0;
            u(idx, idx) = s == n ? std::polar(1.0, -phi_c * z) : Complex(1.0);
        }
    }
    return u;
}

std::array<KrausFactor, 2> meter_kraus_y(double phi_c, size_t n, size_t dim) {
    check_index(n, dim);
    CMatrix p = basis_projector(dim, n);
    CMatrix one = identity(dim);
    double s_plus = std::sin(phi_c + kPi / 4.0);
    double s_minus = -std::sin(phi_c - kPi / 4.0);
    double r = 1.0 / std::sqrt(2.0);
    std::array<KrausFactor, 2> out;
    int i = 0;
    for (double s : {s_plus, s_minus}) {
        out[i].op = r * (one + (std::sqrt(2.0) * s - 1.0) * p);
        out[i].label.axis = MeterAxis::kY;
        out[i].label.sign = i == 0 ? +1 : -1;
        out[i].label.n = static_cast<int>(n);
        ++i;
    }
    return out;
}

std::array<KrausFactor, 2> meter_kraus_x(double phi_c, size_t n, size_t dim) {
    check_index(n, dim);
    CMatrix p = basis_projector(dim, n);
    std::array<KrausFactor, 2> out;
    out[0].op = identity(dim) + (std::cos(phi_c) - 1.0) * p;
    out[1].op = std::sin(phi_c) * p;
    for (int i = 0; i < 2; ++i) {
        out[i].label.axis = MeterAxis::kX;
        out[i].label.sign = i == 0 ? +1 : -1;
        out[i].label.n = static_cast<int>(n);
    }
    return out;
}

std::array<KrausFactor, 2> meter_kraus_z(double phi_c, size_t n, size_t dim) {
    check_index(n, dim);
    std::array<KrausFactor, 2> out;
    double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 2; ++i) {
        double sign = i == 0 ? 1.0 : -1.0;
        CMatrix k = r * identity(dim);
        auto idx = static_cast<Eigen::Index>(n);
        k(idx, idx) = std::polar(r, -sign * phi_c);
        out[i].op = std::move(k);
        out[i].label.axis = MeterAxis::kZ;
        out[i].label.sign = i == 0 ? +1 : -1;
        out[i].label.n = static_cast<int>(n);
    }
    return out;
}

std::array<KrausFactor, 2> meter_kraus(MeterAxis axis, double phi_c, size_t n, size_t dim) {
    switch (axis) {
        case MeterAxis::kX:
            return meter_kraus_x(phi_c, n, dim);
        case MeterAxis::kY:
            return meter_kraus_y(phi_c, n, dim);
        case MeterAxis::kZ:
            return meter_kraus_z(phi_c, n, dim);
        case MeterAxis::kNone:
            break;
    }
    throw std::invalid_argument("meter_kraus: no axis");
}

RankOneBranch dst_branch(MeterAxis axis, int sign, size_t m, double phi_c, size_t n, size_t dim) {
    check_index(n, dim);
    check_index(m, dim);
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("dst_branch: sign must be +1 or -1");
    }
    const double d = static_cast<double>(dim);
    const CVector cm = conjugate_basis(dim)[m].amplitudes();
    // <n|c_m> = omega^{mn}/sqrt(d)
    const Complex overlap = omega_power(static_cast<long long>(m * n), dim) / std::sqrt(d);
    const auto ni = static_cast<Eigen::Index>(n);

    RankOneBranch out;
    CVector v = cm;
    switch (axis) {
        case MeterAxis::kY: {
            double s = sign > 0 ? std::sin(phi_c + kPi / 4.0) : -std::sin(phi_c - kPi / 4.0);
            out.alpha = 0.5 * (1.0 - 1.0 / d + 2.0 * s * s / d);
            v(ni) += (std::sqrt(2.0) * s - 1.0) * overlap;
            v /= std::sqrt(2.0 * out.alpha);
            break;
        }
        case MeterAxis::kX: {
            double sin2 = std::sin(phi_c) * std::sin(phi_c);
            if (sign > 0) {
                out.alpha = 1.0 - sin2 / d;
                v(ni) += (std::cos(phi_c) - 1.0) * overlap;
                v /= std::sqrt(out.alpha);
            } else {
                out.alpha = sin2 / d;
                v = CVector::Zero(static_cast<Eigen::Index>(dim));
                v(ni) = 1.0;
            }
            break;
        }
        case MeterAxis::kZ: {
            // K_+-^dagger |c_m> = (|c_m> + (e^{+-i phi} - 1) <n|c_m> |n>)/sqrt2
            out.alpha = 0.5;
            v(ni) += (std::polar(1.0, sign * phi_c) - 1.0) * overlap;
            break;
        }
        case MeterAxis::kNone:
            throw std::invalid_argument("dst_branch: no axis");
    }
    out.vector = std::move(v);
    return out;
}

DiscretePovm dst_povm(const DstConfig &config) {
    check_config(config);
    std::vector<PovmElement> elements;
    for_each_branch(config, [&](size_t n, MeterAxis axis, double weight) {
        for (int sign : {+1, -1}) {
            for (size_t m = 0; m < config.dim; ++m) {
                RankOneBranch b = dst_branch(axis, sign, m, config.phi_c, n, config.dim);
                OutcomeLabel label;
                label.axis = axis;
                label.sign = sign;
                label.m = static_cast<int>(m);
                label.n = static_cast<int>(n);
                elements.push_back({label, (weight * b.alpha) * (b.vector * b.vector.adjoint())});
            }
        }
    });
    return apply_postselection(DiscretePovm(std::move(elements)), config);
}

DiscretePovm dst_povm_from_kraus(const DstConfig &config) {
    check_config(config);
    KrausStage meter;
    for_each_branch(config, [&](size_t n, MeterAxis axis, double weight) {
        for (auto &k : meter_kraus(axis, config.phi_c, n, config.dim)) {
            k.weight = weight;
            meter.push_back(std::move(k));
        }
    });
    KrausStage strong;
    Basis cb = conjugate_basis(config.dim);
    for (size_t m = 0; m < config.dim; ++m) {
        KrausFactor k;
        k.op = cb[m].projector();
        k.label.m = static_cast<int>(m);
        strong.push_back(std::move(k));
    }
    std::vector<KrausStage> stages{std::move(meter), std::move(strong)};
    return apply_postselection(compose_kraus(stages), config);
}

std::array<std::vector<double>, 2> simulate_dst_circuit(const PureState &state, double phi_c, size_t n,
                                                        MeterAxis axis) {
    const size_t dim = state.dim();
    check_index(n, dim);
    CVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CVector joint = kron(state.amplitudes(), plus);
    CVector evolved = interaction_unitary(phi_c, n, dim) * joint;
    Basis cb = conjugate_basis(dim);
    std::array<std::vector<double>, 2> out;
    for (int meter = 0; meter < 2; ++meter) {
        CVector mv = meter_vector(axis, meter);
        out[static_cast<size_t>(meter)].assign(dim, 0.0);
        for (size_t m = 0; m < dim; ++m) {
            CVector bra = kron(cb[m].amplitudes(), mv);
            out[static_cast<size_t>(meter)][m] = std::norm(bra.dot(evolved));
        }
    }
    return out;
}

ConditionalRow conditional_stats(const PureState &state, double phi_c, size_t n) {
    const size_t dim = state.dim();
    check_index(n, dim);
    const double d = static_cast<double>(dim);
    const double sphi = std::sin(phi_c);
    const double s2phi = std::sin(2.0 * phi_c);
    const double cphi = std::cos(phi_c);

    ConditionalRow row;
    row.exp_y.assign(dim, 0.0);
    row.exp_z.assign(dim, 0.0);
    row.prob_cm.assign(dim, 0.0);
    for (size_t m = 0; m < dim; ++m) {
        // Outcome c_m on psi equals outcome c_0 on Z^{-m} psi.
        PureState shifted = postselection_shift(state, m);
        Complex psi_n = shifted[n];
        Complex upsilon = shifted.amplitudes().sum();
        Complex cross = psi_n * std::conj(upsilon);
        double mod2 = std::norm(psi_n);
        double prob = (std::norm(upsilon) + 2.0 * (cphi - 1.0) * (cross.real() - mod2)) / d;
        prob = std::max(prob, 0.0);
        row.prob_cm[m] = prob;
        if (prob > kUndefinedProbability) {
            row.exp_y[m] = (2.0 * sphi * cross.real() + (s2phi - 2.0 * sphi) * mod2) / (d * prob);
            row.exp_z[m] = 2.0 * sphi * cross.imag() / (d * prob);
        }
    }

    auto ys = simulate_dst_circuit(state, phi_c, n, MeterAxis::kY);
    auto zs = simulate_dst_circuit(state, phi_c, n, MeterAxis::kZ);
    for (size_t m = 0; m < dim; ++m) {
        double py = ys[0][m] + ys[1][m];
        double pz = zs[0][m] + zs[1][m];
        double err = std::max(std::abs(py - row.prob_cm[m]), std::abs(pz - row.prob_cm[m]));
        if (row.prob_cm[m] > 1e-6) {
            err = std::max(err, std::abs((ys[0][m] - ys[1][m]) / py - row.exp_y[m]));
            err = std::max(err, std::abs((zs[0][m] - zs[1][m]) / pz - row.exp_z[m]));
        }
        if (err > kRouteAgreement) {
            throw NumericalError("conditional_stats: closed form and circuit disagree by " +
                                 std::to_string(err));
        }
    }
    return row;
}

ConditionalStats conditional_stats(const PureState &state, double phi_c) {
    ConditionalStats stats;
    stats.phi_c = phi_c;
    PureState fixed = state.upsilon_phase();
    stats.upsilon = fixed.amplitudes().sum();
    stats.upsilon_zero = std::abs(stats.upsilon) <= kTolerances.upsilon_zero;
    for (size_t n = 0; n < state.dim(); ++n) {
        stats.rows.push_back(conditional_stats(fixed, phi_c, n));
    }
    return stats;
}

PureState postselection_shift(const PureState &state, size_t m) {
    const size_t dim = state.dim();
    check_index(m, dim);
    CVector v = state.amplitudes();
    for (size_t n = 0; n < dim; ++n) {
        v(static_cast<Eigen::Index>(n)) *= omega_power(-static_cast<long long>(m * n), dim);
    }
    return PureState::normalized(v);
}

PureState reconstruct_weak(const ConditionalStats &stats, ReconstructionMode mode) {
    const size_t dim = stats.dim();
    if (dim == 0) {
        throw std::invalid_argument("reconstruct_weak: empty statistics");
    }
    if (stats.upsilon_zero) {
        throw NumericalError("reconstruct_weak: Upsilon = 0, reconstruction undefined");
    }
    auto estimate_for = [&](size_t m) -> std::optional<CVector> {
        CVector v(static_cast<Eigen::Index>(dim));
        for (size_t n = 0; n < dim; ++n) {
            if (stats.rows[n].prob_cm[m] <= kUndefinedProbability) {
                return std::nullopt;
            }
            Complex reading(stats.rows[n].exp_y[m], stats.rows[n].exp_z[m]);
            v(static_cast<Eigen::Index>(n)) = omega_power(static_cast<long long>(m * n), dim) * reading;
        }
        if (v.norm() == 0.0) {
            return std::nullopt;
        }
        return v;
    };

    if (mode == ReconstructionMode::kPostselectedC0) {
        auto v = estimate_for(0);
        if (!v) {
            throw NumericalError("reconstruct_weak: all-zero expectation data");
        }
        return PureState::normalized(*v);
    }

    std::vector<std::pair<double, CVector>> parts;
    for (size_t m = 0; m < dim; ++m) {
        auto v = estimate_for(m);
        if (!v) continue;
        double w = 0.0;
        for (size_t n = 0; n < dim; ++n) w += stats.rows[n].prob_cm[m];
        parts.emplace_back(w / static_cast<double>(dim), v->normalized());
    }
    if (parts.empty()) {
        throw NumericalError("reconstruct_weak: all-zero expectation data");
    }
    size_t ref = 0;
    for (size_t k = 1; k < parts.size(); ++k) {
        if (parts[k].first > parts[ref].first) ref = k;
    }
    CVector total = CVector::Zero(static_cast<Eigen::Index>(dim));
    for (const auto &[w, v] : parts) {
        Complex ov = parts[ref].second.dot(v);
        Complex align = std::abs(ov) > 0.0 ? std::conj(ov) / std::abs(ov) : Complex(1.0);
        total += w * align * v;
    }
    if (total.norm() == 0.0) {
        throw NumericalError("reconstruct_weak: estimates cancel");
    }
    return PureState::normalized(total);
}

AugmentedStats exact_augmented_stats(const PureState &state, double phi_c) {
    AugmentedStats out;
    out.stats = conditional_stats(state, phi_c);
    for (size_t n = 0; n < state.dim(); ++n) {
        auto xs = simulate_dst_circuit(state, phi_c, n, MeterAxis::kX);
        out.minus_x_freq.push_back(xs[1][0]);
    }
    return out;
}

PureState reconstruct_exact_augmented(const AugmentedStats &data) {
    const ConditionalStats &stats = data.stats;
    const double phi = stats.phi_c;
    if (!(phi > 0.0 && phi <= kPi / 2.0 + 1e-12)) {
        throw std::invalid_argument("reconstruct_exact_augmented: phi_c must lie in (0, pi/2]");
    }
    const size_t dim = stats.dim();
    if (dim == 0 || data.minus_x_freq.size() != dim) {
        throw std::invalid_argument("reconstruct_exact_augmented: inconsistent statistics");
    }
    const double d = static_cast<double>(dim);
    const double sphi = std::sin(phi);
    const double s2phi = std::sin(2.0 * phi);
    CVector cross(static_cast<Eigen::Index>(dim));
    for (size_t n = 0; n < dim; ++n) {
        const ConditionalRow &row = stats.rows[n];
        double mod2 = d * data.minus_x_freq[n] / (sphi * sphi);
        double dp = d * row.prob_cm[0];
        double re = (dp * row.exp_y[0] - (s2phi - 2.0 * sphi) * mod2) / (2.0 * sphi);
        double im = dp * row.exp_z[0] / (2.0 * sphi);
        cross(static_cast<Eigen::Index>(n)) = Complex(re, im);
    }
    // sum_n psi_n Upsilon* = |Upsilon|^2
    double upsilon2 = cross.sum().real();
    if (!(upsilon2 > kTolerances.upsilon_zero)) {
        throw NumericalError("reconstruct_exact_augmented: Upsilon = 0, reconstruction undefined");
    }
    return PureState::normalized(cross / std::sqrt(upsilon2));
}

}  // namespace wmtomo
