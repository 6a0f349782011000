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

#ifndef WMTOMO_PROTOCOLS_H
#define WMTOMO_PROTOCOLS_H

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wmtomo/dasarvind.h"
#include "wmtomo/povm.h"

namespace wmtomo {

enum class ProtocolKind {
    kDstOriginal,
    kDstAugmentedEqual,
    kDstAugmentedHalfZ,
    kDasArvind,
    kMub,
    kHaarOdop,
    kTetrahedron,
};

/// Command-line names: dst-original, dst-augmented-equal, dst-augmented-half-z,
/// das-arvind, mub, haar-odop, tetrahedron.
std::string_view protocol_name(ProtocolKind kind);
/// Throws std::invalid_argument listing the valid names.
ProtocolKind parse_protocol(std::string_view name);
const std::vector<ProtocolKind> &all_protocols();

/// True for families whose POVM depends on a strength (phi_c or epsilon).
bool has_strength(ProtocolKind kind);

/// Qubit measurement family. `strength` is phi_c for the DST variants and
/// epsilon for das-arvind; other families ignore it.
struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::kMub;
    double strength = 0.0;
    size_t da_nodes = 41;       ///< quadrature nodes per meter axis for das-arvind.
    size_t haar_bases = 10000;  ///< bases in a sampled haar-odop POVM.
    uint64_t haar_seed = 0;
};

/// Discrete qubit POVM for the family (das-arvind is discretized, haar-odop
/// is a fixed sample of haar_bases axes drawn from haar_seed).
DiscretePovm make_povm(const ProtocolSpec &spec);

/// Draws one outcome on the qubit with Bloch vector r and returns its
/// likelihood as a qubit effect (any positive scale). das-arvind samples the
/// continuous meter readings and haar-odop draws a fresh axis per call; the
/// other families sample their discrete POVM.
using OutcomeSampler = std::function<QubitEffect(const Vec3 &r, Rng &rng)>;
OutcomeSampler make_sampler(const ProtocolSpec &spec);

/// Samples a fixed list of effects.
OutcomeSampler discrete_sampler(std::vector<QubitEffect> effects);

}  // namespace wmtomo

#endif
