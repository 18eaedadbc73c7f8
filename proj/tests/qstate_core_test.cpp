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

#include <cmath>
#include <limits>

#include "kduncert/errors.hpp"
#include "kduncert/linalg.hpp"
#include "kduncert/quantum_types.hpp"
#include "kduncert/random.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace kduncert {
namespace {

using namespace kdtest;

template <typename F>
ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

TEST(ValidateDensity, AcceptsProjectors) {
    EXPECT_EQ(state(diag({1.0, 0.0})).dim(), 2);
    const DensityMatrix plus = state(mat2(0.5, 0.5, 0.5, 0.5));
    EXPECT_NEAR(plus.purity(), 1.0, 1e-12);
}

TEST(ValidateDensity, RejectsNegativeEigenvalueAndReportsIt) {
    try {
        validate_density(mat2(0.5, 0.6, 0.6, 0.5));
        FAIL() << "expected NotPsd";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPsd);
        EXPECT_NE(e.message().find("-0.1"), std::string::npos) << e.message();
    }
}

TEST(ValidateDensity, ErrorCodes) {
    EXPECT_EQ(code_of([] { validate_density(mat2(0.5, 0.1, 0.2, 0.5)); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([] { validate_density(diag({0.5, 0.4})); }), ErrorCode::NotUnitTrace);
    EXPECT_EQ(code_of([] { validate_density(ComplexMatrix::Zero(2, 3)); }), ErrorCode::NotSquare);
    EXPECT_EQ(code_of([] { validate_density(diag({std::numeric_limits<double>::quiet_NaN(), 1.0})); }),
              ErrorCode::NonFinite);
}

TEST(ValidateDensity, ToleratesRoundoff) {
    ComplexMatrix m = diag({0.5 + 5e-11, 0.5 - 5e-11});
    m(0, 1) = 5e-11;
    EXPECT_NO_THROW(validate_density(m));
}

TEST(ValidatePovm, AcceptsPvmAndDegenerate) {
    EXPECT_EQ(validate_povm({diag({1, 0}), diag({0, 1})}).size(), 2u);
    EXPECT_EQ(degenerate_povm(2, 2).size(), 2u);
}

TEST(ValidatePovm, ErrorCodes) {
    EXPECT_EQ(code_of([] { validate_povm({diag({1, 0}), diag({1, 0})}); }), ErrorCode::IncompleteSum);
    EXPECT_EQ(code_of([] { validate_povm({diag({1.5, 0}), diag({-0.5, 1})}); }), ErrorCode::EffectNotPsd);
    EXPECT_EQ(code_of([] { validate_povm({diag({1, 0}), ComplexMatrix::Identity(3, 3)}); }), ErrorCode::DimMismatch);
}

TEST(ValidatePovm, LabelsDefaultToIndices) {
    const Povm p = validate_povm({diag({1, 0}), diag({0, 1})});
    ASSERT_EQ(p.labels().size(), 2u);
    EXPECT_EQ(p.labels()[0], "0");
    EXPECT_EQ(p.labels()[1], "1");
    const Povm q = validate_povm({diag({1, 0}), diag({0, 1})}, {"up", "down"});
    EXPECT_EQ(q.labels()[1], "down");
}

TEST(RankOnePvm, ValidatesUnitarity) {
    EXPECT_EQ(code_of([] { validate_rank_one_pvm(mat2(1, 1, 0, 1)); }), ErrorCode::NotUnitary);
    const RankOnePvm x = x_basis();
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b) {
        EXPECT_LT(max_entry_gap(x.projector(b) * x.projector(b), x.projector(b)), 1e-12);
        sum += x.projector(b);
    }
    EXPECT_LT(max_entry_gap(sum, ComplexMatrix::Identity(2, 2)), 1e-12);
    EXPECT_LT(max_entry_gap(x.projector(0) * x.projector(1), ComplexMatrix::Zero(2, 2)), 1e-12);
}

TEST(RankOnePvm, RoundTripsThroughPovm) {
    const Povm p = y_basis().as_povm();
    const RankOnePvm back = rank_one_pvm_from_povm(p);
    for (int b = 0; b < 2; ++b) {
        EXPECT_LT(max_entry_gap(back.projector(b), p.effect(b)), 1e-12);
    }
    EXPECT_EQ(code_of([] { rank_one_pvm_from_povm(degenerate_povm(2, 2)); }), ErrorCode::NotProjector);
}

TEST(SpectralDecompose, Examples) {
    const SpectralDecomposition a = spectral_decompose(diag({0.75, 0.25}));
    ASSERT_EQ(a.eigenvalues.size(), 2u);
    EXPECT_NEAR(a.eigenvalues[0], 0.75, 1e-12);
    EXPECT_NEAR(a.eigenvalues[1], 0.25, 1e-12);
    EXPECT_LT(max_entry_gap(a.eigenprojectors[0], diag({1, 0})), 1e-12);

    const SpectralDecomposition b = spectral_decompose(ComplexMatrix::Identity(2, 2) / 2.0);
    ASSERT_EQ(b.eigenvalues.size(), 1u);
    EXPECT_EQ(b.multiplicities[0], 2);
    EXPECT_LT(max_entry_gap(b.eigenprojectors[0], ComplexMatrix::Identity(2, 2)), 1e-12);

    const SpectralDecomposition c = spectral_decompose(plus_state().matrix());
    ASSERT_EQ(c.eigenvalues.size(), 2u);
    EXPECT_NEAR(c.eigenvalues[0], 1.0, 1e-12);
    EXPECT_LT(max_entry_gap(c.eigenprojectors[0], proj(ket({1, 1}))), 1e-12);
    EXPECT_LT(max_entry_gap(c.eigenprojectors[1], proj(ket({1, -1}))), 1e-12);
}

TEST(SpectralDecompose, RejectsNonHermitian) {
    EXPECT_EQ(code_of([] { spectral_decompose(mat2(0, 1, 0, 0)); }), ErrorCode::NotHermitian);
}

TEST(SpectralDecompose, RoundTripAndCompleteness) {
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const int d = 2 + k % 7;
        const ComplexMatrix g = ginibre(d, d, rng);
        const ComplexMatrix h = g + g.adjoint();
        const SpectralDecomposition s = spectral_decompose(h);
        EXPECT_LT(max_entry_gap(s.reconstruct(), h), 1e-9);
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const ComplexMatrix &p : s.eigenprojectors) {
            sum += p;
        }
        EXPECT_LT(max_entry_gap(sum, ComplexMatrix::Identity(d, d)), 1e-9);
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    }
}

TEST(TraceNorm, Examples) {
    EXPECT_EQ(trace_norm(ComplexMatrix::Zero(3, 3)), 0.0);
    EXPECT_NEAR(trace_norm(kI * pauli_y()), 2.0, 1e-12);
    EXPECT_NEAR(trace_norm(mat2(0, 0.25, -0.25, 0)), 0.5, 1e-12);
}

TEST(TraceNorm, AgreesWithGramOracle) {
    Rng rng(5);
    for (int k = 0; k < 40; ++k) {
        const ComplexMatrix m = ginibre(2 + k % 5, 2 + k % 5, rng);
        EXPECT_NEAR(trace_norm(m), oracle::trace_norm(m), 1e-9);
    }
}

TEST(OperatorNorm, Examples) {
    EXPECT_NEAR(operator_norm(ComplexMatrix::Identity(5, 5)), 1.0, 1e-12);
    EXPECT_NEAR(operator_norm(pauli_z()), 1.0, 1e-12);
    EXPECT_NEAR(operator_norm(diag({2, 0})), 2.0, 1e-12);
}

TEST(OperatorSqrt, Examples) {
    EXPECT_LT(max_entry_gap(operator_sqrt(diag({4, 9})), diag({2, 3})), 1e-12);
    const ComplexMatrix p = proj(ket({1, kI}));
    EXPECT_LT(max_entry_gap(operator_sqrt(p), p), 1e-12);
    EXPECT_LT(max_entry_gap(operator_sqrt(diag({0.75, 0.25})), diag({std::sqrt(0.75), 0.5})), 1e-12);
    EXPECT_EQ(code_of([] { operator_sqrt(diag({1, -0.1})); }), ErrorCode::NotPsd);
    EXPECT_NO_THROW(operator_sqrt(diag({1, -5e-11})));
}

TEST(Tensor, Examples) {
    EXPECT_LT(max_entry_gap(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
                            ComplexMatrix::Identity(4, 4)),
              1e-15);
    EXPECT_LT(max_entry_gap(tensor(diag({1, 0}), diag({1, 0})), diag({1, 0, 0, 0})), 1e-15);
    const ComplexMatrix xi = tensor(pauli_x(), ComplexMatrix::Identity(2, 2));
    EXPECT_LT(max_entry_gap(xi.block(0, 2, 2, 2), ComplexMatrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(max_entry_gap(xi.block(2, 0, 2, 2), ComplexMatrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(xi.block(0, 0, 2, 2).norm(), 1e-15);
}

TEST(PartialTrace, Examples) {
    Rng rng(9);
    const ComplexMatrix r1 = random_density(2, 2, rng).matrix();
    const ComplexMatrix r2 = random_density(3, 2, rng).matrix();
    const ComplexMatrix r12 = tensor(r1, r2);
    EXPECT_LT(max_entry_gap(partial_trace(r12, 2, 3, Subsystem::First), r1), 1e-12);
    EXPECT_LT(max_entry_gap(partial_trace(r12, 2, 3, Subsystem::Second), r2), 1e-12);

    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = kRootHalf;
    const ComplexMatrix reduced = partial_trace(proj(bell), 2, 2, Subsystem::First);
    EXPECT_LT(max_entry_gap(reduced, ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
    EXPECT_NEAR(std::abs(reduced.trace() - proj(bell).trace()), 0.0, 1e-12);

    EXPECT_EQ(code_of([&] { partial_trace(r12, 2, 2, Subsystem::First); }), ErrorCode::DimMismatch);
}

TEST(FourierMatrix, IsUnitaryAndUnbiased) {
    for (int d = 1; d <= 6; ++d) {
        const ComplexMatrix f = fourier_matrix(d);
        EXPECT_LT(max_entry_gap(f.adjoint() * f, ComplexMatrix::Identity(d, d)), 1e-12);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                EXPECT_NEAR(std::abs(f(i, j)), 1.0 / std::sqrt(static_cast<double>(d)), 1e-12);
            }
        }
    }
}

TEST(NearestUnitary, RepairsPerturbation) {
    Rng rng(1);
    const ComplexMatrix u = haar_random_unitary(4, rng);
    const ComplexMatrix noisy = u + 1e-6 * ginibre(4, 4, rng);
    const ComplexMatrix w = nearest_unitary(noisy);
    EXPECT_LT(max_entry_gap(w.adjoint() * w, ComplexMatrix::Identity(4, 4)), 1e-12);
    EXPECT_LT(max_entry_gap(w, u), 1e-5);
}

TEST(BinaryDephase, MatchesLuedersOracle) {
    const ComplexMatrix rho = plus_state().matrix();
    EXPECT_LT(max_entry_gap(binary_dephase(rho, diag({1, 0})), ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
    Rng rng(2);
    const ComplexMatrix r = random_density(3, 3, rng).matrix();
    const ComplexMatrix p = proj(haar_random_unitary(3, rng).col(0));
    EXPECT_LT(max_entry_gap(binary_dephase(r, p), oracle::lueders(r, p)), 1e-12);
}

TEST(HaarRandomUnitary, Examples) {
    const ComplexMatrix one = haar_random_unitary(1, 42);
    EXPECT_NEAR(std::abs(one(0, 0)), 1.0, 1e-12);
    const ComplexMatrix u = haar_random_unitary(4, 42);
    EXPECT_LE(max_entry_gap(u.adjoint() * u, ComplexMatrix::Identity(4, 4)), 1e-10);
    for (Eigen::Index c = 0; c < 4; ++c) {
        EXPECT_NEAR(u.col(c).norm(), 1.0, 1e-10);
    }
    EXPECT_EQ(haar_random_unitary(4, 42), u);
    EXPECT_NE(haar_random_unitary(4, 43), u);
}

TEST(RandomDensity, Examples) {
    EXPECT_NEAR(random_density(3, 1, 7).purity(), 1.0, 1e-9);
    const DensityMatrix full = random_density(2, 2, 7);
    EXPECT_GT(hermitian_eigenvalues(full.matrix()).minCoeff(), 1e-6);
    EXPECT_EQ(random_density(4, 2, 11).matrix(), random_density(4, 2, 11).matrix());
    EXPECT_EQ(code_of([] { random_density(2, 3, 1); }), ErrorCode::BadRank);
    EXPECT_EQ(code_of([] { random_density(2, 0, 1); }), ErrorCode::BadRank);
}

TEST(RandomPovm, Examples) {
    const Povm single = random_povm(3, 1, 5);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_LT(max_entry_gap(single.effect(0), ComplexMatrix::Identity(3, 3)), 1e-9);

    const Povm p = random_povm(2, 3, 5);
    ASSERT_EQ(p.size(), 3u);
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    for (const ComplexMatrix &m : p.effects()) {
        sum += m;
    }
    EXPECT_LT(max_entry_gap(sum, ComplexMatrix::Identity(2, 2)), 1e-9);

    const Povm q = random_povm(2, 3, 5);
    for (size_t a = 0; a < 3; ++a) {
        EXPECT_EQ(p.effect(a), q.effect(a));
    }
    EXPECT_EQ(code_of([] { random_povm(2, 0, 5); }), ErrorCode::BadConfig);
}

TEST(RandomRankOnePovm, EffectsHaveRankOne) {
    Rng rng(8);
    const Povm p = random_rank_one_povm(3, 5, rng);
    ASSERT_EQ(p.size(), 5u);
    for (const ComplexMatrix &m : p.effects()) {
        const RealVector ev = hermitian_eigenvalues(m);
        int nonzero = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            nonzero += ev(i) > 1e-9 ? 1 : 0;
        }
        EXPECT_EQ(nonzero, 1);
    }
    EXPECT_EQ(code_of([&] { random_rank_one_povm(3, 2, rng); }), ErrorCode::BadConfig);
}

TEST(RandomDraws, PassValidators) {
    Rng rng(12);
    for (int k = 0; k < 300; ++k) {
        const int d = 1 + k % 6;
        EXPECT_NO_THROW(validate_density(random_density(d, 1 + k % d, rng).matrix()));
        const Povm p = random_povm(d, 1 + k % 5, rng);
        EXPECT_NO_THROW(validate_povm(p.effects()));
    }
}

TEST(DeriveSeed, SpreadsStreams) {
    EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
    EXPECT_NE(derive_seed(0, 1), derive_seed(1, 0));
    EXPECT_EQ(derive_seed(17, 3), derive_seed(17, 3));
}

TEST(Errors, WhatCarriesCodeName) {
    const Error e(ErrorCode::DimMismatch, "sizes differ");
    EXPECT_EQ(e.message(), "sizes differ");
    EXPECT_NE(std::string(e.what()).find("DimMismatch"), std::string::npos);
    EXPECT_EQ(to_string(ErrorCode::WitnessNotFound), "WitnessNotFound");
}

}  // namespace
}  // namespace kduncert
