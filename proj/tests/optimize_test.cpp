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


#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "kduncert/errors.hpp"
#include "kduncert/optimize.hpp"
#include "kduncert/random.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace kduncert {
namespace {

using namespace kdtest;

PvmObjective diagonal_modulus_of(const ComplexMatrix &op) {
    return [op](const RankOnePvm &pvm) { return oracle::diagonal_modulus(op, pvm.basis_unitary()); };
}

PvmObjective imaginary_mass_of(const ComplexMatrix &op) {
    return [op](const RankOnePvm &pvm) {
        double s = 0.0;
        for (int b = 0; b < pvm.dim(); ++b) {
            s += std::abs(pvm.vector(b).dot(op * pvm.vector(b)).imag());
        }
        return s;
    };
}

ComplexMatrix random_normal(int d, int kind, Rng &rng) {
    const ComplexMatrix g = ginibre(d, d, rng);
    if (kind == 0) {
        return g + g.adjoint();
    }
    if (kind == 1) {
        return g - g.adjoint();
    }
    const ComplexMatrix u = haar_random_unitary(d, rng);
    return u * g.diagonal().asDiagonal() * u.adjoint();
}

TEST(OptimizerConfig, Validation) {
    OptimizerConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.n_restarts = 0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.rel_tol = 0.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.max_iters = 0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.step_init = -1.0;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(SupOverPvm, ConstantObjectiveConvergesInOneIteration) {
    const SupremumResult r = sup_over_pvm([](const RankOnePvm &) { return 3.5; }, 3, fast_config());
    EXPECT_EQ(r.value, 3.5);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations_used, 1);
    EXPECT_EQ(r.best_start, 0);
    for (double v : r.per_restart_values) {
        EXPECT_EQ(v, 3.5);
    }
}

TEST(SupOverPvm, TraceNormOfNormalOperators) {
    Rng rng(31);
    for (int k = 0; k < 12; ++k) {
        const int d = 2 + k % 3;
        const ComplexMatrix n = random_normal(d, k % 3, rng);
        const SupremumResult r = sup_over_pvm(diagonal_modulus_of(n), d, fast_config(k));
        EXPECT_NEAR(r.value, trace_norm(n), 1e-6) << "instance " << k;
        EXPECT_NEAR(oracle::diagonal_modulus(n, r.best_basis.basis_unitary()), r.value, 1e-12);
    }
}

TEST(SupOverPvm, ValueIsBestRestartAndBasisIsUnitary) {
    Rng rng(32);
    const ComplexMatrix op = ginibre(3, 3, rng);
    const SupremumResult r = sup_over_pvm(diagonal_modulus_of(op), 3, fast_config(4));
    ASSERT_FALSE(r.per_restart_values.empty());
    const double best = *std::max_element(r.per_restart_values.begin(), r.per_restart_values.end());
    EXPECT_NEAR(r.value, best, 1e-12);
    EXPECT_NEAR(r.per_restart_values[r.best_start], r.value, 1e-15);
    for (int k = 0; k < r.best_start; ++k) {
        EXPECT_LT(r.per_restart_values[k], best - 1e-12);
    }
    const ComplexMatrix &u = r.best_basis.basis_unitary();
    EXPECT_LT(max_entry_gap(u.adjoint() * u, ComplexMatrix::Identity(3, 3)), 1e-10);
    // identity + Fourier + Haar restarts
    EXPECT_EQ(r.per_restart_values.size(), 2u + 8u);
}

TEST(SupOverPvm, DeterministicForFixedSeed) {
    Rng rng(33);
    const ComplexMatrix op = ginibre(4, 4, rng);
    const SupremumResult a = sup_over_pvm(diagonal_modulus_of(op), 4, fast_config(9));
    const SupremumResult b = sup_over_pvm(diagonal_modulus_of(op), 4, fast_config(9));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.per_restart_values, b.per_restart_values);
    EXPECT_EQ(a.best_basis.basis_unitary(), b.best_basis.basis_unitary());
    EXPECT_EQ(a.iterations_used, b.iterations_used);
}

TEST(SupOverPvm, ExtraStartsAreEvaluatedAfterStructuredOnes) {
    Rng rng(34);
    const ComplexMatrix h = random_normal(3, 0, rng);
    const std::array<ComplexMatrix, 1> extra{spectral_decompose(h).eigenvectors};
    OptimizerConfig cfg = fast_config();
    cfg.n_restarts = 1;
    const SupremumResult r = sup_over_pvm(diagonal_modulus_of(h), 3, cfg, extra);
    ASSERT_EQ(r.per_restart_values.size(), 4u);
    EXPECT_NEAR(r.per_restart_values[2], trace_norm(h), 1e-9);
}

TEST(SupOverPvm, RejectsBadDimension) {
    EXPECT_THROW(sup_over_pvm([](const RankOnePvm &) { return 0.0; }, 0, fast_config()), Error);
}

TEST(SupDiagonalFunctional, MatchesGenericEngine) {
    Rng rng(35);
    for (int k = 0; k < 6; ++k) {
        const int d = 2 + k % 3;
        const ComplexMatrix op = ginibre(d, d, rng);
        const SupremumResult fast = sup_diagonal_functional(op, DiagonalFunctional::Modulus, fast_config(k));
        const SupremumResult generic = sup_over_pvm(diagonal_modulus_of(op), d, fast_config(k));
        EXPECT_NEAR(fast.value, generic.value, 1e-6);
        EXPECT_NEAR(evaluate_diagonal_functional(op, DiagonalFunctional::Modulus, fast.best_basis.basis_unitary()),
                    fast.value, 1e-12);
    }
}

TEST(SupDiagonalFunctional, ImaginaryModulusOfCommutatorProduct) {
    // sup_b sum |Im <b|M rho|b>| is half the trace norm of [M, rho].
    Rng rng(36);
    for (int k = 0; k < 10; ++k) {
        const int d = 2 + k % 3;
        const ComplexMatrix rho = random_density(d, d, rng).matrix();
        const ComplexMatrix m = random_povm(d, 2, rng).effect(0);
        const SupremumResult r =
            sup_diagonal_functional(m * rho, DiagonalFunctional::ImaginaryModulus, fast_config(k));
        EXPECT_NEAR(r.value, oracle::trace_norm(oracle::commutator(m, rho)) / 2, 1e-6);
    }
}

TEST(BruteForceSupQubit, AgreesWithClosedFormNonreality) {
    Rng rng(37);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix rho = random_density(2, 1 + k % 2, rng).matrix();
        const ComplexMatrix m = random_povm(2, 2, rng).effect(0);
        const double closed = oracle::trace_norm(oracle::commutator(m, rho)) / 2;
        EXPECT_NEAR(brute_force_sup_qubit(imaginary_mass_of(m * rho), 200), closed, 1e-4) << "instance " << k;
    }
}

TEST(BruteForceSupQubit, ConstantObjective) {
    EXPECT_EQ(brute_force_sup_qubit([](const RankOnePvm &) { return -2.25; }, 10), -2.25);
}

TEST(BruteForceSupQubit, FinerGridNeverWorse) {
    Rng rng(38);
    for (int k = 0; k < 5; ++k) {
        const ComplexMatrix op = ginibre(2, 2, rng);
        const PvmObjective f = diagonal_modulus_of(op);
        EXPECT_GE(brute_force_sup_qubit(f, 400), brute_force_sup_qubit(f, 200) - 1e-12);
    }
}

TEST(BruteForceSupQubit, AgreesWithIndependentBlochScan) {
    Rng rng(39);
    for (int k = 0; k < 4; ++k) {
        const ComplexMatrix op = ginibre(2, 2, rng);
        const double lib = brute_force_sup_qubit(diagonal_modulus_of(op), 100);
        const double ref = oracle::bloch_grid_sup([&](const ComplexMatrix &u) { return oracle::diagonal_modulus(op, u); },
                                                  100);
        EXPECT_NEAR(lib, ref, 1e-6);
    }
    EXPECT_THROW(brute_force_sup_qubit([](const RankOnePvm &) { return 0.0; }, 0), Error);
}

TEST(QubitBasis, IsUnitaryWithBlochVector) {
    const ComplexMatrix u = qubit_basis(0.7, 1.9);
    EXPECT_LT(max_entry_gap(u.adjoint() * u, ComplexMatrix::Identity(2, 2)), 1e-12);
    const ComplexMatrix p = u.col(0) * u.col(0).adjoint();
    EXPECT_NEAR((p * pauli_z()).trace().real(), std::cos(0.7), 1e-12);
}

TEST(SupOverProductPvm, SingleFactorMatchesUnrestricted) {
    Rng rng(40);
    const ComplexMatrix op = ginibre(3, 3, rng);
    const std::array<int, 1> dims{3};
    const SupremumResult product = sup_over_product_pvm(diagonal_modulus_of(op), dims, fast_config(2));
    const SupremumResult plain = sup_over_pvm(diagonal_modulus_of(op), 3, fast_config(2));
    EXPECT_NEAR(product.value, plain.value, 1e-9);
}

TEST(SupOverProductPvm, SeparableObjectiveFactorizes) {
    Rng rng(41);
    const ComplexMatrix h1 = random_normal(2, 0, rng);
    const ComplexMatrix h2 = random_normal(2, 0, rng);
    const std::array<int, 2> dims{2, 2};
    const SupremumResult joint = sup_over_product_pvm(diagonal_modulus_of(tensor(h1, h2)), dims, fast_config(3));
    const double first = sup_over_pvm(diagonal_modulus_of(h1), 2, fast_config(3)).value;
    const double second = sup_over_pvm(diagonal_modulus_of(h2), 2, fast_config(3)).value;
    EXPECT_NEAR(joint.value, first * second, 1e-6);
    EXPECT_NEAR(joint.value, trace_norm(h1) * trace_norm(h2), 1e-6);
}

TEST(SupOverProductPvm, NeverExceedsUnrestricted) {
    Rng rng(42);
    for (int k = 0; k < 4; ++k) {
        const ComplexMatrix op = ginibre(4, 4, rng);
        const std::array<int, 2> dims{2, 2};
        const double product = sup_over_product_pvm(diagonal_modulus_of(op), dims, fast_config(k)).value;
        const double full = sup_over_pvm(diagonal_modulus_of(op), 4, fast_config(k)).value;
        EXPECT_LE(product, full + 1e-8);
    }
}

TEST(SupOverProductPvm, RejectsEmptyOrNonPositiveDims) {
    const PvmObjective f = [](const RankOnePvm &) { return 0.0; };
    try {
        sup_over_product_pvm(f, std::span<const int>{}, fast_config());
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
    }
    const std::array<int, 2> bad{2, 0};
    EXPECT_THROW(sup_over_product_pvm(f, bad, fast_config()), Error);
}

}  // namespace
}  // namespace kduncert
