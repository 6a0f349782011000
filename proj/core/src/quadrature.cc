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

#include "wmtomo/quadrature.h"

#include <cmath>
#include <stdexcept>

#include "wmtomo/qcore.h"

namespace wmtomo {

QuadratureRule gauss_legendre(size_t n, double a, double b) {
    if (n == 0) {
        throw std::invalid_argument("gauss_legendre: need at least one node");
    }
    if (!(b > a)) {
        throw std::invalid_argument("gauss_legendre: empty interval");
    }
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    size_t m = (n + 1) / 2;
    for (size_t i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Tricomi initial guess.
        double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (size_t j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                double jd = static_cast<double>(j);
                p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
            }
            pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) {
                break;
            }
        }
        if (2 * i + 1 == n) {
            z = 0.0;
        }
        double w = 2.0 * half / ((1.0 - z * z) * pp * pp);
        rule.nodes[i] = mid - half * z;
        rule.nodes[n - 1 - i] = mid + half * z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace wmtomo
