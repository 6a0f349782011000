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

#include "wmtomo/dasarvind.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "wmtomo/quadrature.h"

namespace wmtomo {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("dasarvind: epsilon must be positive");
    }
}

QuadratureRule meter_rule(const DaConfig &config) {
    double half = config.range_sigmas / std::sqrt(config.epsilon);
    return gauss_legendre(config.nodes, -half, half);
}

/// Lorentz boost of the Bloch vector along axis j with rapidity a.
Vec3 boost(const Vec3 &r, int j, double a) {
    double ch = std::cosh(a);
    double sh = std::sinh(a);
    Vec3 out = r;
    out(j) = sh + r(j) * ch;
    return out / (ch + r(j) * sh);
}

double draw_meter(double r_j, double epsilon, Rng &rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    double center = unif(rng) < 0.5 * (1.0 + r_j) ? 1.0 : -1.0;
    return center + normal(rng) / std::sqrt(epsilon);
}

}  // namespace

void check_config(const DaConfig &config) {
    check_epsilon(config.epsilon);
    if (config.nodes < 2) {
        throw std::invalid_argument("DaConfig: need at least 2 nodes per axis");
    }
    if (!(config.range_sigmas > 0.0)) {
        throw std::invalid_argument("DaConfig: range must be positive");
    }
}

CMatrix meter_kraus_density(MeterAxis axis, double q, double epsilon) {
    check_epsilon(epsilon);
    const CMatrix *sigma = nullptr;
    if (axis == MeterAxis::kZ) {
        sigma = &pauli_z();
    } else if (axis == MeterAxis::kX) {
        sigma = &pauli_x();
    } else {
        throw std::invalid_argument("meter_kraus_density: axis must be z or x");
    }
    double scale = std::pow(epsilon / (2.0 * kPi), 0.25) * std::exp(-epsilon * (q * q + 1.0) / 4.0);
    double h = 0.5 * epsilon * q;
    return scale * (std::cosh(h) * identity(2) + std::sinh(h) * (*sigma));
}

PovmDensitySample povm_density(double q1, double q2, double epsilon) {
    check_epsilon(epsilon);
    const double a = epsilon * q1;
    const double b = epsilon * q2;
    const double ca = std::cosh(a);
    const double cb = std::cosh(b);
    PovmDensitySample s;
    s.q1 = q1;
    s.q2 = q2;
    s.g = epsilon / (2.0 * kPi) * std::exp(-epsilon * (q1 * q1 + q2 * q2 + 2.0) / 2.0) * ca * cb;
    const double denom = ca * cb;
    s.n_plus = Vec3(std::sinh(b), 1.0, std::sinh(a) * cb) / denom;
    s.n_minus = Vec3(std::sinh(b), -1.0, std::sinh(a) * cb) / denom;
    return s;
}

DiscretePovm discretize(const DaConfig &config) {
    check_config(config);
    QuadratureRule rule = meter_rule(config);
    std::vector<PovmElement> elements;
    elements.reserve(2 * config.nodes * config.nodes);
    for (size_t i = 0; i < config.nodes; ++i) {
        for (size_t j = 0; j < config.nodes; ++j) {
            PovmDensitySample s = povm_density(rule.nodes[i], rule.nodes[j], config.epsilon);
            double w = 0.5 * s.g * rule.weights[i] * rule.weights[j];
            for (int sign : {+1, -1}) {
                OutcomeLabel label;
                label.axis = MeterAxis::kY;
                label.sign = sign;
                label.cell = static_cast<int>(i * config.nodes + j);
                const Vec3 &n = sign > 0 ? s.n_plus : s.n_minus;
                elements.push_back({label, qubit_operator({w, w * n})});
            }
        }
    }
    DiscretePovm povm(std::move(elements));
    double deficit = (povm.sum() - identity(2)).operatorNorm();
    if (deficit > kTolerances.grid_too_coarse) {
        throw GridTooCoarseError("discretize: quadrature completeness deficit " + std::to_string(deficit) +
                                     " exceeds " + std::to_string(kTolerances.grid_too_coarse),
                                 deficit);
    }
    return povm;
}

DaOutcome sample_measurement(const Vec3 &bloch, double epsilon, Rng &rng) {
    check_epsilon(epsilon);
    if (bloch.norm() > 1.0 + 1e-9) {
        throw std::invalid_argument("sample_measurement: Bloch vector longer than 1");
    }
    DaOutcome out;
    Vec3 r = bloch;
    out.q1 = draw_meter(r.z(), epsilon, rng);
    r = boost(r, 2, epsilon * out.q1);
    out.q2 = draw_meter(r.x(), epsilon, rng);
    r = boost(r, 0, epsilon * out.q2);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    out.sign = unif(rng) < 0.5 * (1.0 + r.y()) ? +1 : -1;
    return out;
}

DaOutcome sample_measurement(const PureState &state, double epsilon, Rng &rng) {
    if (state.dim() != 2) {
        throw std::invalid_argument("sample_measurement: qubit state required");
    }
    return sample_measurement(bloch_vector(state), epsilon, rng);
}

QubitEffect outcome_effect(const DaOutcome &outcome, double epsilon) {
    if (outcome.sign != 1 && outcome.sign != -1) {
        throw std::invalid_argument("outcome_effect: sign must be +1 or -1");
    }
    PovmDensitySample s = povm_density(outcome.q1, outcome.q2, epsilon);
    double half = 0.5 * s.g;
    return {half, half * (outcome.sign > 0 ? s.n_plus : s.n_minus)};
}

std::vector<WeightedPoint> basis_distribution(const DaConfig &config) {
    check_config(config);
    QuadratureRule rule = meter_rule(config);
    std::vector<WeightedPoint> points;
    points.reserve(config.nodes * config.nodes);
    for (size_t i = 0; i < config.nodes; ++i) {
        for (size_t j = 0; j < config.nodes; ++j) {
            PovmDensitySample s = povm_density(rule.nodes[i], rule.nodes[j], config.epsilon);
            points.push_back({s.n_plus, s.g * rule.weights[i] * rule.weights[j]});
        }
    }
    return points;
}

int hemisphere_cell(const Vec3 &n) {
    double norm = n.norm();
    if (!(norm > 0.0)) {
        throw std::invalid_argument("hemisphere_cell: zero vector");
    }
    Vec3 u = n / norm;
    if (u.y() < 0.0) u = -u;
    int band = std::min(7, static_cast<int>(u.y() * 8.0));
    double az = std::atan2(u.z(), u.x()) + kPi;
    int sector = static_cast<int>(az / (2.0 * kPi) * 16.0) % 16;
    return band * 16 + sector;
}

double uniformity_metric(const std::vector<WeightedPoint> &points) {
    if (points.empty()) {
        throw std::invalid_argument("uniformity_metric: no points");
    }
    std::array<double, kHemisphereCells> mass{};
    double total = 0.0;
    for (const auto &p : points) {
        if (p.weight < 0.0) {
            throw std::invalid_argument("uniformity_metric: negative weight");
        }
        mass[static_cast<size_t>(hemisphere_cell(p.n))] += p.weight;
        total += p.weight;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::invalid_argument("uniformity_metric: weights sum to " + std::to_string(total));
    }
    double tv = 0.0;
    for (double m : mass) {
        tv += std::abs(m - 1.0 / kHemisphereCells);
    }
    return tv;
}

}  // namespace wmtomo
