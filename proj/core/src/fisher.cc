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

#include "wmtomo/fisher.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wmtomo/quadrature.h"

namespace wmtomo {

namespace {

struct Frame {
    Vec3 r;
    Vec3 d_theta;
    Vec3 d_phi;
};

Frame frame(double theta, double phi) {
    double st = std::sin(theta), ct = std::cos(theta);
    double sp = std::sin(phi), cp = std::cos(phi);
    return {Vec3(st * cp, st * sp, ct), Vec3(ct * cp, ct * sp, -st), Vec3(-st * sp, st * cp, 0.0)};
}

void accumulate(FisherPair &j, double p, double dt, double dp) {
    const double zero = kTolerances.fisher_zero;
    if (p < zero) {
        if (std::abs(dt) > zero || std::abs(dp) > zero) j.singular = true;
        return;
    }
    j.j_theta += dt * dt / p;
    j.j_phi += dp * dp / p;
    j.j_cross += dt * dp / p;
}

void require_qubit(const DiscretePovm &povm) {
    if (povm.dim() != 2) {
        throw std::invalid_argument("fisher: qubit POVM required");
    }
}

/// Smallest-eigenvalue direction of sum_k e_k e_k^T when it is rank-deficient.
std::optional<Vec3> null_direction(std::span<const QubitEffect> effects) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (const auto &e : effects) m += e.e * e.e.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m);
    double top = eig.eigenvalues()(2);
    if (top <= 0.0 || eig.eigenvalues()(0) <= 1e-12 * top) {
        return eig.eigenvectors().col(0);
    }
    return std::nullopt;
}

}  // namespace

FisherPair fisher_information(std::span<const QubitEffect> effects, const BlochAngles &angles) {
    Frame f = frame(angles.theta, angles.phi_az);
    FisherPair j;
    for (const auto &e : effects) {
        accumulate(j, e.e0 + e.e.dot(f.r), e.e.dot(f.d_theta), e.e.dot(f.d_phi));
    }
    return j;
}

FisherPair fisher_information(const DiscretePovm &povm, const BlochAngles &angles) {
    require_qubit(povm);
    std::vector<QubitEffect> effects = qubit_effects(povm);
    return fisher_information(std::span<const QubitEffect>(effects), angles);
}

FisherPair fisher_information_general(const DiscretePovm &povm, const BlochAngles &angles) {
    require_qubit(povm);
    const double c = std::cos(angles.theta / 2.0), s = std::sin(angles.theta / 2.0);
    const Complex ph = std::polar(1.0, angles.phi_az);
    CVector psi(2), d_theta(2), d_phi(2);
    psi << c, ph * s;
    d_theta << -s / 2.0, ph * c / 2.0;
    d_phi << 0.0, Complex(0.0, 1.0) * ph * s;
    FisherPair j;
    for (const auto &e : povm.elements()) {
        CVector ep = e.op * psi;
        double p = psi.dot(ep).real();
        double dt = 2.0 * d_theta.dot(ep).real();
        double dp = 2.0 * d_phi.dot(ep).real();
        accumulate(j, p, dt, dp);
    }
    return j;
}

CrbResult crb(std::span<const QubitEffect> effects, const SphereQuadrature &quad) {
    if (quad.n_theta < 2 || quad.n_phi < 1) {
        throw std::invalid_argument("crb: quadrature needs n_theta >= 2 and n_phi >= 1");
    }
    CrbResult out;
    out.quadrature = quad;
    out.null_direction = null_direction(effects);
    if (out.null_direction) {
        out.divergent = true;
        out.c_value = std::numeric_limits<double>::infinity();
        out.reason = "POVM Bloch vectors do not span 3 dimensions";
        return out;
    }

    QuadratureRule rule = gauss_legendre(quad.n_theta, -1.0, 1.0);
    const double dphi = 2.0 * kPi / static_cast<double>(quad.n_phi);
    const double norm = 1.0 / (4.0 * kPi);
    double total = 0.0;
    for (size_t i = 0; i < quad.n_theta; ++i) {
        double theta = std::acos(rule.nodes[i]);
        double sin2 = 1.0 - rule.nodes[i] * rule.nodes[i];
        for (size_t k = 0; k < quad.n_phi; ++k) {
            double phi = (static_cast<double>(k) + 0.5) * dphi;
            FisherPair j = fisher_information(effects, BlochAngles(theta, phi));
            if (j.singular) ++out.singular_nodes;
            double det = j.j_theta * j.j_phi - j.j_cross * j.j_cross;
            double integrand = 0.25 * (j.j_phi + sin2 * j.j_theta) / det;
            if (!(det > 0.0) || !std::isfinite(integrand)) {
                out.divergent = true;
                out.c_value = std::numeric_limits<double>::infinity();
                out.reason = "singular Fisher matrix";
                out.integrand_max = std::numeric_limits<double>::infinity();
                out.argmax = BlochAngles(theta, phi);
                return out;
            }
            if (integrand > out.integrand_max) {
                out.integrand_max = integrand;
                out.argmax = BlochAngles(theta, phi);
            }
            total += norm * rule.weights[i] * dphi * integrand;
            if (total > kTolerances.crb_divergence) {
                out.divergent = true;
                out.c_value = std::numeric_limits<double>::infinity();
                out.reason = "running integral exceeds divergence threshold";
                return out;
            }
        }
    }
    out.c_value = total;
    return out;
}

CrbResult crb(const DiscretePovm &povm, const SphereQuadrature &quad) {
    require_qubit(povm);
    std::vector<QubitEffect> effects = qubit_effects(povm);
    return crb(std::span<const QubitEffect>(effects), quad);
}

CrbResult crb(const ProtocolSpec &spec, const SphereQuadrature &quad) {
    return crb(make_povm(spec), quad);
}

CrbResult crb_haar_odop(size_t n_bases, Rng &rng, const SphereQuadrature &quad) {
    if (n_bases < 100) {
        throw std::invalid_argument("crb_haar_odop: n_bases must be at least 100");
    }
    return crb(haar_odop_povm(n_bases, rng), quad);
}

CrbScan scan_crb(const ProtocolSpec &base, std::span<const double> strengths, const SphereQuadrature &quad) {
    if (!has_strength(base.kind)) {
        throw std::invalid_argument("scan_crb: protocol '" + std::string(protocol_name(base.kind)) +
                                    "' has no strength parameter");
    }
    CrbScan scan;
    for (double s : strengths) {
        ProtocolSpec spec = base;
        spec.strength = s;
        CrbResult r = crb(spec, quad);
        scan.points.push_back({s, r.c_value, r.divergent});
        if (!r.divergent && (!scan.argmin || r.c_value < scan.points[*scan.argmin].c_value)) {
            scan.argmin = scan.points.size() - 1;
        }
    }
    return scan;
}

double asymptotic_fidelity(double c_value, double n_copies) {
    if (!(n_copies >= 1.0)) {
        throw std::invalid_argument("asymptotic_fidelity: n_copies must be at least 1");
    }
    return 1.0 - c_value / n_copies;
}

}  // namespace wmtomo
