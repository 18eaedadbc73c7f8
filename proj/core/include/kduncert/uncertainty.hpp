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

#ifndef KDUNCERT_UNCERTAINTY_HPP
#define KDUNCERT_UNCERTAINTY_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kduncert/quantumness.hpp"

namespace kduncert {

/// NRe pairs the S entropy with quantum nonreality; NCl pairs the T entropy
/// with quantum nonclassicality.
enum class Flavor { NRe, NCl };

std::string_view to_string(Flavor f);
/// Accepts "NRe"/"NCl" in any letter case. Throws ParseError otherwise.
Flavor parse_flavor(std::string_view name);

struct Decomposition {
    Flavor flavor = Flavor::NRe;
    double total = 0.0;
    double quantum = 0.0;
    double classical = 0.0;
    std::vector<double> probs;
    /// Optimizer report; empty for the exact NRe path.
    std::optional<EffectwiseSupremum> diagnostics;
};

/// Tr{M^a rho}, clamped to [0, 1].
std::vector<double> outcome_probs(const DensityMatrix &state, const Povm &povm);

/// Sum_a sqrt(p_a (1 - p_a)). Throws BadDistribution unless every p_a lies in
/// [-1e-10, 1 + 1e-10] and the sum is 1 within 1e-9.
double s_entropy(std::span<const double> probs);
/// Sum_a sqrt(p_a) - 1, which is half the Tsallis 1/2-entropy.
double t_entropy(std::span<const double> probs);
double entropy(Flavor f, std::span<const double> probs);

double total_uncertainty(const DensityMatrix &state, const Povm &povm, Flavor f);

/// Total, quantum and classical uncertainty. The quantum part is exact for
/// NRe and variational for NCl; classical = total - quantum.
Decomposition decompose(const DensityMatrix &state, const Povm &povm, Flavor f, const OptimizerConfig &cfg);

/// Tr{(rho - rho^2)^(1/2)}.
double impurity_s(const DensityMatrix &state);
/// Tr{sqrt(rho)} - 1.
double impurity_t(const DensityMatrix &state);
double impurity(const DensityMatrix &state, Flavor f);

struct InfimumResult {
    double value;
    /// Rank-1 eigenbasis of the state; attains the infimum with zero quantum part.
    Povm achieving_povm;
};

/// Infimum of the total uncertainty over all POVMs. The result is re-scored
/// before returning; a mismatch above 1e-9 throws Internal.
InfimumResult infimum_total(const DensityMatrix &state, Flavor f);

/// M^A = sum_{a in A} M^a per block. Throws BadPartition unless the blocks
/// are non-empty and cover every index exactly once.
Povm coarse_grain(const Povm &povm, const std::vector<std::vector<int>> &partition);

/// sup ||[A, rho]||_1 / (2 ||A||) over observables A diagonal in `pvm`.
double bound_asymmetry(const DensityMatrix &state, const RankOnePvm &pvm, const OptimizerConfig &cfg);

/// sup |Tr{[A, B] rho}| / (||A|| ||B||) over A diagonal in pvm_a and B
/// diagonal in pvm_b.
double uncertainty_relation_bound(const DensityMatrix &state, const RankOnePvm &pvm_a, const RankOnePvm &pvm_b,
                                  const OptimizerConfig &cfg);

}  // namespace kduncert

#endif
