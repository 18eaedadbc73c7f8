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

#ifndef KDUNCERT_RANDOM_HPP
#define KDUNCERT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "kduncert/quantum_types.hpp"

namespace kduncert {

using Rng = std::mt19937_64;

/// Mixes (seed, stream) into an independent seed (splitmix64 finaliser).
/// Restart k of an optimizer seeded with s draws from derive_seed(s, k).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// d x n matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
ComplexMatrix ginibre(int rows, int cols, Rng &rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// diag(R) folded back into Q.
ComplexMatrix haar_random_unitary(int d, Rng &rng);
ComplexMatrix haar_random_unitary(int d, std::uint64_t seed);

/// G G^dag / Tr(G G^dag) with G of shape d x rank.
DensityMatrix random_density(int d, int rank, Rng &rng);
DensityMatrix random_density(int d, int rank, std::uint64_t seed);

/// M^i = S^{-1/2} A_i S^{-1/2} with A_i = G_i G_i^dag and S = sum_i A_i.
Povm random_povm(int d, int n_outcomes, Rng &rng);
Povm random_povm(int d, int n_outcomes, std::uint64_t seed);

/// Same construction with rank-1 draws A_i = g_i g_i^dag, so every effect is
/// rank 1 with trace at most 1. Needs n_outcomes >= d.
Povm random_rank_one_povm(int d, int n_outcomes, Rng &rng);

RankOnePvm random_rank_one_pvm(int d, Rng &rng);

}  // namespace kduncert

#endif
