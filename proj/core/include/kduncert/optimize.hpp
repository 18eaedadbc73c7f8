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

#ifndef KDUNCERT_OPTIMIZE_HPP
#define KDUNCERT_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kduncert/quantum_types.hpp"

namespace kduncert {

struct OptimizerConfig {
    /// Number of Haar-random starts (structured starts come on top).
    int n_restarts = 32;
    /// Cap on improving sweeps per start.
    int max_iters = 500;
    /// Relative sweep improvement below which the step is halved.
    double rel_tol = 1e-8;
    double step_init = 0.1;
    std::uint64_t seed = 0;
    bool include_structured_starts = true;

    /// Throws BadConfig on n_restarts < 1, max_iters < 1, rel_tol <= 0 or
    /// step_init <= 0.
    void validate() const;
};

struct SupremumResult {
    double value = 0.0;
    RankOnePvm best_basis = computational_basis(1);
    /// One entry per start, structured starts first, in evaluation order.
    std::vector<double> per_restart_values;
    bool converged = false;
    /// Iterations used by the winning start.
    int iterations_used = 0;
    int best_start = 0;
};

using PvmObjective = std::function<double(const RankOnePvm &)>;

/// Multistart local ascent of `objective` over rank-1 PVM bases of C^d.
///
/// Each start U0 is refined by coordinate ascent on U = U0 exp(i H(theta)),
/// H spanned by the off-diagonal Hermitian basis {E_jk + E_kj, -i(E_jk - E_kj)}.
/// Every accepted coordinate step is folded back into U0, so each trial is an
/// exact 2x2 rotation of two columns and iterates never leave the unitary
/// group. Diagonal generators only rephase basis vectors and leave every
/// projector unchanged, so they are not searched.
///
/// A sweep tries +/- step on every coordinate. A sweep with no improvement, or
/// relative improvement below rel_tol, halves the step; a start converges when
/// the step falls below 1e-3 * sqrt(rel_tol).
///
/// Starts: identity and Fourier bases (when include_structured_starts), then
/// `extra_starts`, then cfg.n_restarts Haar unitaries where restart k draws
/// from derive_seed(cfg.seed, k). The first start reaching the maximum within
/// 1e-12 wins.
SupremumResult sup_over_pvm(const PvmObjective &objective, int d, const OptimizerConfig &cfg,
                            std::span<const ComplexMatrix> extra_starts = {});

/// Functionals of the form sum_b f(<b|op|b>).
enum class DiagonalFunctional {
    /// sum_b |<b|op|b>|
    Modulus,
    /// sum_b |Im <b|op|b>|
    ImaginaryModulus,
};

/// Same contract as sup_over_pvm for a diagonal functional of `op`, with
/// O(d) incremental evaluation per trial step.
SupremumResult sup_diagonal_functional(const ComplexMatrix &op, DiagonalFunctional functional,
                                       const OptimizerConfig &cfg, std::span<const ComplexMatrix> extra_starts = {});

double evaluate_diagonal_functional(const ComplexMatrix &op, DiagonalFunctional functional, const ComplexMatrix &basis);

/// Supremum restricted to product bases U_1 (x) ... (x) U_N with
/// dims = (d_1, ..., d_N). One unitary per factor; otherwise the same
/// multistart contract as sup_over_pvm.
SupremumResult sup_over_product_pvm(const PvmObjective &objective, std::span<const int> dims,
                                    const OptimizerConfig &cfg);

/// Exhaustive oracle for d = 2: scans basis directions on a
/// grid_density x 2*grid_density (polar, azimuth) grid, then polishes the best
/// cell with alternating golden-section searches.
double brute_force_sup_qubit(const PvmObjective &objective, int grid_density);

/// Qubit basis {|n>, |n_perp>} with Bloch direction (theta, phi).
ComplexMatrix qubit_basis(double theta, double phi);

}  // namespace kduncert

#endif
