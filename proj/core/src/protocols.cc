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

#include "wmtomo/protocols.h"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include "wmtomo/dst.h"

namespace wmtomo {

std::string_view protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kDstOriginal:
            return "dst-original";
        case ProtocolKind::kDstAugmentedEqual:
            return "dst-augmented-equal";
        case ProtocolKind::kDstAugmentedHalfZ:
            return "dst-augmented-half-z";
        case ProtocolKind::kDasArvind:
            return "das-arvind";
        case ProtocolKind::kMub:
            return "mub";
        case ProtocolKind::kHaarOdop:
            return "haar-odop";
        case ProtocolKind::kTetrahedron:
            return "tetrahedron";
    }
    return "unknown";
}

const std::vector<ProtocolKind> &all_protocols() {
    static const std::vector<ProtocolKind> kinds = {
        ProtocolKind::kDstOriginal, ProtocolKind::kDstAugmentedEqual, ProtocolKind::kDstAugmentedHalfZ,
        ProtocolKind::kDasArvind,   ProtocolKind::kMub,               ProtocolKind::kHaarOdop,
        ProtocolKind::kTetrahedron,
    };
    return kinds;
}

ProtocolKind parse_protocol(std::string_view name) {
    std::string valid;
    for (ProtocolKind kind : all_protocols()) {
        if (protocol_name(kind) == name) return kind;
        if (!valid.empty()) valid += ", ";
        valid += protocol_name(kind);
    }
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "' (expected one of " + valid + ")");
}

bool has_strength(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kDstOriginal:
        case ProtocolKind::kDstAugmentedEqual:
        case ProtocolKind::kDstAugmentedHalfZ:
        case ProtocolKind::kDasArvind:
            return true;
        default:
            return false;
    }
}

DiscretePovm make_povm(const ProtocolSpec &spec) {
    DstConfig dst;
    dst.dim = 2;
    dst.phi_c = spec.strength;
    switch (spec.kind) {
        case ProtocolKind::kDstOriginal:
            dst.meter_probs = MeterProbs::original();
            return dst_povm(dst);
        case ProtocolKind::kDstAugmentedEqual:
            dst.meter_probs = MeterProbs::augmented_equal();
            return dst_povm(dst);
        case ProtocolKind::kDstAugmentedHalfZ:
            dst.meter_probs = MeterProbs::augmented_half_z();
            return dst_povm(dst);
        case ProtocolKind::kDasArvind:
            return discretize(DaConfig{spec.strength, spec.da_nodes});
        case ProtocolKind::kMub:
            return mub_povm();
        case ProtocolKind::kHaarOdop: {
            Rng rng(spec.haar_seed);
            return haar_odop_povm(spec.haar_bases, rng);
        }
        case ProtocolKind::kTetrahedron:
            return tetrahedron_povm();
    }
    throw std::invalid_argument("make_povm: unknown protocol");
}

OutcomeSampler discrete_sampler(std::vector<QubitEffect> effects) {
    if (effects.empty()) {
        throw std::invalid_argument("discrete_sampler: no effects");
    }
    auto shared = std::make_shared<const std::vector<QubitEffect>>(std::move(effects));
    return [shared](const Vec3 &r, Rng &rng) -> QubitEffect {
        const auto &eff = *shared;
        double total = 0.0;
        for (const auto &e : eff) total += std::max(0.0, e.probability(r));
        std::uniform_real_distribution<double> unif(0.0, total);
        double u = unif(rng);
        double acc = 0.0;
        size_t last = 0;
        for (size_t k = 0; k < eff.size(); ++k) {
            double p = std::max(0.0, eff[k].probability(r));
            if (p <= 0.0) continue;
            last = k;
            acc += p;
            if (u < acc) return eff[k];
        }
        return eff[last];
    };
}

OutcomeSampler make_sampler(const ProtocolSpec &spec) {
    switch (spec.kind) {
        case ProtocolKind::kDasArvind: {
            check_config(DaConfig{spec.strength, spec.da_nodes});
            double eps = spec.strength;
            return [eps](const Vec3 &r, Rng &rng) { return outcome_effect(sample_measurement(r, eps, rng), eps); };
        }
        case ProtocolKind::kHaarOdop:
            return [](const Vec3 &r, Rng &rng) -> QubitEffect {
                Vec3 n = random_unit_vector(rng);
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                double sign = unif(rng) < 0.5 * (1.0 + n.dot(r)) ? 1.0 : -1.0;
                return {0.5, 0.5 * sign * n};
            };
        default:
            return discrete_sampler(qubit_effects(make_povm(spec)));
    }
}

}  // namespace wmtomo
