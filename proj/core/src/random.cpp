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

#include "kduncert/random.hpp"

#include <cmath>
#include <sstream>

#include "kduncert/errors.hpp"

namespace kduncert {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexMatrix ginibre(int rows, int cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    // Column-major fill keeps the draw order independent of Eigen internals.
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix haar_random_unitary(int d, Rng &rng) {
    if (d < 1) {
        throw Error(ErrorCode::BadConfig, "unitary dimension must be positive");
    }
    const ComplexMatrix z = ginibre(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix &r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

ComplexMatrix haar_random_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(d, rng);
}

DensityMatrix random_density(int d, int rank, Rng &rng) {
    if (d < 1 || rank < 1 || rank > d) {
        std::ostringstream msg;
        msg << "rank " << rank << " outside [1, " << d << "]";
        throw Error(ErrorCode::BadRank, msg.str());
    }
    const ComplexMatrix g = ginibre(d, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return validate_density(0.5 * (rho + rho.adjoint()));
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(d, rank, rng);
}

namespace {

Povm normalise_draws(std::vector<ComplexMatrix> a, int d) {
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix &ai : a) {
        s += ai;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (s + s.adjoint()));
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < 1e-12) {
        std::ostringstream msg;
        msg << "sum of draws has minimum eigenvalue " << min_eig;
        throw Error(ErrorCode::SingularSum, msg.str());
    }
    const ComplexMatrix &v = solver.eigenvectors();
    const ComplexMatrix s_inv_half =
        v * solver.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * v.adjoint();
    std::vector<ComplexMatrix> effects;
    effects.reserve(a.size());
    for (const ComplexMatrix &ai : a) {
        ComplexMatrix m = s_inv_half * ai * s_inv_half;
        effects.push_back(0.5 * (m + m.adjoint()));
    }
    return validate_povm(std::move(effects));
}

Povm draw_povm(int d, int n_outcomes, int generator_cols, Rng &rng) {
    std::vector<ComplexMatrix> a;
    a.reserve(n_outcomes);
    for (int i = 0; i < n_outcomes; ++i) {
        const ComplexMatrix g = ginibre(d, generator_cols, rng);
        a.push_back(g * g.adjoint());
    }
    return normalise_draws(std::move(a), d);
}

}  // namespace

Povm random_povm(int d, int n_outcomes, Rng &rng) {
    if (d < 1 || n_outcomes < 1) {
        throw Error(ErrorCode::BadConfig, "random POVM needs d >= 1 and at least one outcome");
    }
    return draw_povm(d, n_outcomes, d, rng);
}

Povm random_rank_one_povm(int d, int n_outcomes, Rng &rng) {
    if (d < 1 || n_outcomes < d) {
        throw Error(ErrorCode::BadConfig, "random rank-1 POVM needs at least d outcomes");
    }
    return draw_povm(d, n_outcomes, 1, rng);
}

Povm random_povm(int d, int n_outcomes, std::uint64_t seed) {
    Rng rng(seed);
    return random_povm(d, n_outcomes, rng);
}

RankOnePvm random_rank_one_pvm(int d, Rng &rng) {
    return RankOnePvm::from_unitary_unchecked(haar_random_unitary(d, rng));
}

}  // namespace kduncert
