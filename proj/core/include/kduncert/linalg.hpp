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

#ifndef KDUNCERT_LINALG_HPP
#define KDUNCERT_LINALG_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace kduncert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Validation thresholds shared by every module.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kDegeneracyGap = 1e-9;
inline constexpr double kPsdClampTol = 1e-10;

double max_abs(const ComplexMatrix &m);
double hermiticity_deviation(const ComplexMatrix &m);
bool all_finite(const ComplexMatrix &m);
void require_square(const ComplexMatrix &m, const char *what);

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// Tr{a b} without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// Eigen-decomposition of a Hermitian operator with degenerate eigenvalues
/// (consecutive gap below kDegeneracyGap) merged into one projector.
struct SpectralDecomposition {
    /// Distinct eigenvalues, descending.
    std::vector<double> eigenvalues;
    /// One projector per distinct eigenvalue; rank equals the multiplicity.
    std::vector<ComplexMatrix> eigenprojectors;
    std::vector<int> multiplicities;
    /// Unitary whose columns are orthonormal eigenvectors in descending
    /// eigenvalue order. Inside a degenerate block the choice of basis is the
    /// solver's; it is kept so downstream rank-1 refinements are reproducible.
    ComplexMatrix eigenvectors;
    /// Eigenvalue of each column of `eigenvectors`.
    RealVector column_eigenvalues;

    ComplexMatrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const ComplexMatrix &h);

/// Eigenvalues of a Hermitian matrix, descending. Only the lower triangle is read.
RealVector hermitian_eigenvalues(const ComplexMatrix &h);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);
/// Largest singular value.
double operator_norm(const ComplexMatrix &m);

/// Principal square root of a PSD operator. Eigenvalues in [-kPsdClampTol, 0)
/// are clamped to zero; anything more negative throws NotPsd.
ComplexMatrix operator_sqrt(const ComplexMatrix &h);

/// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

enum class Subsystem { First, Second };

/// Reduced operator of the kept factor of a (d1*d2)-dimensional operator.
ComplexMatrix partial_trace(const ComplexMatrix &m, int d1, int d2, Subsystem keep);

/// Unitary discrete Fourier transform, F(j,k) = exp(2 pi i jk/d)/sqrt(d).
ComplexMatrix fourier_matrix(int d);

/// P m P + (I-P) m (I-P).
ComplexMatrix binary_dephase(const ComplexMatrix &m, const ComplexMatrix &projector);

/// Closest unitary in Frobenius norm (polar factor).
ComplexMatrix nearest_unitary(const ComplexMatrix &m);

}  // namespace kduncert

#endif
