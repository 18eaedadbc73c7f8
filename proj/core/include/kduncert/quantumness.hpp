// Copyright 2026 The kduncert Authors
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

#ifndef KDUNCERT_QUANTUMNESS_HPP
#define KDUNCERT_QUANTUMNESS_HPP

#include <span>
#include <vector>

#include "kduncert/optimize.hpp"
#include "kduncert/quantum_types.hpp"

namespace kduncert {

/// Sum over effects of independent per-effect suprema.
struct EffectwiseSupremum {
    /// Sum of the per-effect values, minus 1 for nonclassicality.
    double value = 0.0;
    /// One optimizer result per effect, in POVM order.
    std::vector<SupremumResult> per_effect;
    /// True iff every per-effect search converged.
    bool converged = true;
    /// Largest iteration count over the per-effect searches.
    int iterations_used = 0;
};

/// Sum_a ||[M^a, rho]||_1 / 2. Exact; equals the supremum over rank-1 PVMs of
/// the imaginary KD mass because [M^a, rho] is normal.
double quantum_nonreality(const DensityMatrix &state, const Povm &povm);

/// Same quantity obtained by running the optimizer on each effect.
EffectwiseSupremum quantum_nonreality_variational(const DensityMatrix &state, const Povm &povm,
                                                  const OptimizerConfig &cfg);

/// Sum_a sup_{Pi} Sum_b |Tr{Pi^b M^a rho}| - 1, clamped to 0 within 1e-9.
EffectwiseSupremum quantum_nonclassicality(const DensityMatrix &state, const Povm &povm, const OptimizerConfig &cfg);

/// Variants whose suprema run over product bases of a space with the given
/// factor dimensions.
EffectwiseSupremum quantum_nonreality_product(const DensityMatrix &state, const Povm &povm,
                                              std::span<const int> dims, const OptimizerConfig &cfg);
EffectwiseSupremum quantum_nonclassicality_product(const DensityMatrix &state, const Povm &povm,
                                                   std::span<const int> dims, const OptimizerConfig &cfg);

/// Extra starting bases used for effect M^a: eigenbases of rho, i[M^a, rho]
/// and M^a, plus the rho and M^a eigenbases rotated by the Fourier matrix.
std::vector<ComplexMatrix> effect_starts(const ComplexMatrix &rho, const ComplexMatrix &effect);

/// Clamps values in [-1e-9, 0) to 0; throws Internal when more negative.
double clamp_nonnegative(double value, const char *what);

}  // namespace kduncert

#endif
