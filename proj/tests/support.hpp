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


// Shared fixtures for the unit tests: qubit states and bases, a fast
// optimizer configuration and the fixture directory.

#ifndef KDUNCERT_TESTS_SUPPORT_HPP
#define KDUNCERT_TESTS_SUPPORT_HPP

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "kduncert/linalg.hpp"
#include "kduncert/optimize.hpp"
#include "kduncert/quantum_types.hpp"

#ifndef KDUNCERT_FIXTURE_DIR
#error "KDUNCERT_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace kdtest {

using kduncert::Complex;
using kduncert::ComplexMatrix;
using kduncert::ComplexVector;

inline const double kRootHalf = std::sqrt(0.5);
inline const Complex kI{0.0, 1.0};

inline std::string fixture(const std::string &name) {
    return std::string(KDUNCERT_FIXTURE_DIR) + "/" + name;
}

inline ComplexVector ket(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (Complex z : amps) {
        v(i++) = z;
    }
    return v.normalized();
}

inline ComplexMatrix proj(const ComplexVector &v) {
    return v * v.adjoint();
}

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline ComplexMatrix pauli_x() {
    return mat2(0.0, 1.0, 1.0, 0.0);
}
inline ComplexMatrix pauli_y() {
    return mat2(0.0, -kI, kI, 0.0);
}
inline ComplexMatrix pauli_z() {
    return mat2(1.0, 0.0, 0.0, -1.0);
}

inline ComplexMatrix diag(std::initializer_list<double> entries) {
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (double x : entries) {
        v(i++) = x;
    }
    return v.asDiagonal();
}

inline kduncert::DensityMatrix state(const ComplexMatrix &m) {
    return kduncert::validate_density(m);
}
inline kduncert::DensityMatrix zero_state() {
    return kduncert::pure_state(ket({1.0, 0.0}));
}
inline kduncert::DensityMatrix plus_state() {
    return kduncert::pure_state(ket({1.0, 1.0}));
}
inline kduncert::DensityMatrix y_plus_state() {
    return kduncert::pure_state(ket({1.0, kI}));
}
inline kduncert::DensityMatrix mixed_state(int d) {
    return kduncert::validate_density(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

inline kduncert::RankOnePvm z_basis() {
    return kduncert::computational_basis(2);
}
inline kduncert::RankOnePvm x_basis() {
    return kduncert::validate_rank_one_pvm(mat2(kRootHalf, kRootHalf, kRootHalf, -kRootHalf));
}
inline kduncert::RankOnePvm y_basis() {
    return kduncert::validate_rank_one_pvm(mat2(kRootHalf, kRootHalf, kRootHalf * kI, -kRootHalf * kI));
}

// Maximally coherent pure state in the computational basis.
inline kduncert::DensityMatrix uniform_superposition(int d) {
    return kduncert::pure_state(ComplexVector::Constant(d, 1.0).normalized());
}

inline kduncert::Povm degenerate_povm(int d, int n) {
    std::vector<ComplexMatrix> effects(n, ComplexMatrix::Identity(d, d) / static_cast<double>(n));
    return kduncert::validate_povm(std::move(effects));
}

inline kduncert::OptimizerConfig fast_config(std::uint64_t seed = 0) {
    kduncert::OptimizerConfig cfg;
    cfg.n_restarts = 8;
    cfg.seed = seed;
    return cfg;
}

inline double max_entry_gap(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace kdtest

#endif
