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

#ifndef WMTOMO_TOLERANCES_H
#define WMTOMO_TOLERANCES_H

#include <stdexcept>
#include <string>

namespace wmtomo {

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
    double normalization = 1e-12;      ///< |<psi|psi> - 1| for pure states.
    double hermiticity = 1e-12;        ///< max |A - A^dagger| entry.
    double unit_trace = 1e-12;         ///< |Tr rho - 1|.
    double min_eigenvalue = -1e-10;    ///< most negative eigenvalue accepted as PSD.
    double orthonormality = 1e-12;     ///< Gram matrix deviation for bases.
    double completeness = 1e-10;       ///< ||sum E - 1|| for exact POVMs.
    double quadrature_completeness = 1e-6;  ///< ||sum E - 1|| for quadrature POVMs.
    double grid_too_coarse = 1e-4;     ///< quadrature deficit that is rejected outright.
    double probability_floor = -1e-12; ///< probabilities above this are clamped to 0.
    double odop_weight = 1e-8;         ///< relative weight mismatch allowed in a projector pair.
    double odop_antipode = 1e-8;       ///< ||n_a + n_b|| allowed in a projector pair.
    double negligible_weight = 1e-14;  ///< elements lighter than this are dropped before pairing.
    double rank_one = 1e-10;           ///< smallest eigenvalue / trace for a rank-one element.
    double fisher_zero = 1e-14;        ///< p and dp both below this: outcome skipped.
    double crb_divergence = 1e6;       ///< running CRB integral above this is divergent.
    double upsilon_zero = 1e-12;       ///< |Upsilon| below this makes DST reconstruction undefined.
    double probability_sum = 1e-12;    ///< mixing probabilities must sum to 1 within this.
};

inline constexpr Tolerances kTolerances{};

/// Raised when a computation is well-posed but numerically fails or is undefined
/// (singular information, vanishing normalization, impossible outcome).
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace wmtomo

#endif
