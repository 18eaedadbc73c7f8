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

#include "kduncert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kduncert/errors.hpp"

namespace kduncert {

double max_abs(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const ComplexMatrix &m) {
    return max_abs(m - m.adjoint());
}

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << what << " must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorCode::NotSquare, msg.str());
    }
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a.cwiseProduct(b.transpose()).sum();
}

namespace {

void require_hermitian(const ComplexMatrix &h, const char *what) {
    require_square(h, what);
    const double dev = hermiticity_deviation(h);
    if (!(dev <= kHermitianTol)) {
        std::ostringstream msg;
        msg << what << " deviates from Hermitian by " << dev;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
    if (eigenprojectors.empty()) {
        return {};
    }
    ComplexMatrix out = ComplexMatrix::Zero(eigenprojectors.front().rows(), eigenprojectors.front().cols());
    for (size_t j = 0; j < eigenvalues.size(); ++j) {
        out += eigenvalues[j] * eigenprojectors[j];
    }
    return out;
}

SpectralDecomposition spectral_decompose(const ComplexMatrix &h) {
    require_hermitian(h, "operator");
    const Eigen::Index d = h.rows();
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);

    SpectralDecomposition out;
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    out.column_eigenvalues = solver.eigenvalues().reverse();

    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index stop = start + 1;
        while (stop < d && out.column_eigenvalues(stop - 1) - out.column_eigenvalues(stop) < kDegeneracyGap) {
            ++stop;
        }
        const Eigen::Index rank = stop - start;
        const auto block = out.eigenvectors.middleCols(start, rank);
        out.eigenvalues.push_back(out.column_eigenvalues.segment(start, rank).mean());
        out.eigenprojectors.push_back(block * block.adjoint());
        out.multiplicities.push_back(static_cast<int>(rank));
        start = stop;
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().reverse();
}

double trace_norm(const ComplexMatrix &m) {
    require_square(m, "operator");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

double operator_norm(const ComplexMatrix &m) {
    require_square(m, "operator");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

ComplexMatrix operator_sqrt(const ComplexMatrix &h) {
    require_hermitian(h, "operator");
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    RealVector lambda = solver.eigenvalues();
    if (lambda(0) < -kPsdClampTol) {
        std::ostringstream msg;
        msg << "minimum eigenvalue " << lambda(0) << " below -" << kPsdClampTol;
        throw Error(ErrorCode::NotPsd, msg.str());
    }
    lambda = lambda.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix &v = solver.eigenvectors();
    return v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, int d1, int d2, Subsystem keep) {
    if (d1 < 1 || d2 < 1 || m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
        std::ostringstream msg;
        msg << "partial trace over " << d1 << "x" << d2 << " needs a " << d1 * d2 << "-dimensional square matrix, got "
            << m.rows() << "x" << m.cols();
        throw Error(ErrorCode::DimMismatch, msg.str());
    }
    if (keep == Subsystem::First) {
        ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i) {
            for (int j = 0; j < d1; ++j) {
                out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (int k = 0; k < d1; ++k) {
        out += m.block(k * d2, k * d2, d2, d2);
    }
    return out;
}

ComplexMatrix fourier_matrix(int d) {
    ComplexMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            // Reduce jk mod d first so the phase stays exact for large indices.
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
            f(j, k) = std::polar(norm, angle);
        }
    }
    return f;
}

ComplexMatrix binary_dephase(const ComplexMatrix &m, const ComplexMatrix &projector) {
    const ComplexMatrix complement = ComplexMatrix::Identity(m.rows(), m.cols()) - projector;
    return projector * m * projector + complement * m * complement;
}

ComplexMatrix nearest_unitary(const ComplexMatrix &m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace kduncert
