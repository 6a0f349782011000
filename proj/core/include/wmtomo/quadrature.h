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

#ifndef WMTOMO_QUADRATURE_H
#define WMTOMO_QUADRATURE_H

#include <cstddef>
#include <vector>

namespace wmtomo {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b], nodes ascending. Nodes of a rule on a
/// symmetric interval are exact mirror images of each other.
QuadratureRule gauss_legendre(size_t n, double a, double b);

}  // namespace wmtomo

#endif
