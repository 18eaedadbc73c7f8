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

#include "kduncert/quantum_types.hpp"

#include <cmath>
#include <sstream>

#include "kduncert/errors.hpp"

namespace kduncert {

namespace {

void require_finite(const ComplexMatrix &m, const char *what) {
    if (!all_finite(m)) {
        throw Error(ErrorCode::NonFinite, std::string(what) + " contains NaN or Inf entries");
    }
}

}  // namespace

double DensityMatrix::purity() const {
    return trace_of_product(matrix_, matrix_).real();
}

DensityMatrix validate_density(const ComplexMatrix &m) {
    require_square(m, "density matrix");
    require_finite(m, "density matrix");
    const double herm = hermiticity_deviation(m);
    if (!(herm <= kHermitianTol)) {
        std::ostringstream msg;
        msg << "max |rho - rho^dag| = " << herm << " exceeds " << kHermitianTol;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
    if (!(trace_dev <= kHermitianTol)) {
        std::ostringstream msg;
        msg << "|Tr rho - 1| = " << trace_dev << " exceeds " << kHermitianTol;
        throw Error(ErrorCode::NotUnitTrace, msg.str());
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    const double min_eig = hermitian_eigenvalues(sym).minCoeff();
    if (min_eig < -kHermitianTol) {
        std::ostringstream msg;
        msg << "minimum eigenvalue " << min_eig << " below -" << kHermitianTol;
        throw Error(ErrorCode::NotPsd, msg.str());
    }
    return DensityMatrix(sym);
}

DensityMatrix pure_state(const ComplexVector &psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) {
        throw Error(ErrorCode::NotUnitTrace, "pure state vector has zero norm");
    }
    const ComplexVector unit = psi / norm;
    return validate_density(unit * unit.adjoint());
}

Povm validate_povm(std::vector<ComplexMatrix> effects, std::vector<std::string> labels) {
    if (effects.empty()) {
        throw Error(ErrorCode::IncompleteSum, "POVM has no effects");
    }
    const Eigen::Index d = effects.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (size_t a = 0; a < effects.size(); ++a) {
        ComplexMatrix &e = effects[a];
        require_square(e, "POVM effect");
        if (e.rows() != d) {
            std::ostringstream msg;
            msg << "effect " << a << " has dimension " << e.rows() << ", expected " << d;
            throw Error(ErrorCode::DimMismatch, msg.str());
        }
        require_finite(e, "POVM effect");
        const double herm = hermiticity_deviation(e);
        if (!(herm <= kHermitianTol)) {
            std::ostringstream msg;
            msg << "effect " << a << " deviates from Hermitian by " << herm;
            throw Error(ErrorCode::EffectNotPsd, msg.str());
        }
        e = 0.5 * (e + e.adjoint()).eval();
        const double min_eig = hermitian_eigenvalues(e).minCoeff();
        if (min_eig < -kHermitianTol) {
            std::ostringstream msg;
            msg << "effect " << a << " has eigenvalue " << min_eig;
            throw Error(ErrorCode::EffectNotPsd, msg.str());
        }
        sum += e;
    }
    const double completeness = max_abs(sum - ComplexMatrix::Identity(d, d));
    if (!(completeness <= kCompletenessTol)) {
        std::ostringstream msg;
        msg << "max |sum_a M^a - I| = " << completeness << " exceeds " << kCompletenessTol;
        throw Error(ErrorCode::IncompleteSum, msg.str());
    }
    if (labels.empty()) {
        for (size_t a = 0; a < effects.size(); ++a) {
            labels.push_back(std::to_string(a));
        }
    } else if (labels.size() != effects.size()) {
        std::ostringstream msg;
        msg << labels.size() << " labels for " << effects.size() << " effects";
        throw Error(ErrorCode::DimMismatch, msg.str());
    }
    return Povm(static_cast<int>(d), std::move(effects), std::move(labels));
}

std::vector<ComplexMatrix> RankOnePvm::projectors() const {
    std::vector<ComplexMatrix> out;
    out.reserve(basis_.cols());
    for (int b = 0; b < dim(); ++b) {
        out.push_back(projector(b));
    }
    return out;
}

Povm RankOnePvm::as_povm(std::vector<std::string> labels) const {
    return validate_povm(projectors(), std::move(labels));
}

RankOnePvm validate_rank_one_pvm(const ComplexMatrix &u) {
    require_square(u, "basis unitary");
    require_finite(u, "basis unitary");
    const double dev = max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
    if (!(dev <= kHermitianTol)) {
        std::ostringstream msg;
        msg << "max |U^dag U - I| = " << dev << " exceeds " << kHermitianTol;
        throw Error(ErrorCode::NotUnitary, msg.str());
    }
    return RankOnePvm(u);
}

RankOnePvm computational_basis(int d) {
    return RankOnePvm::from_unitary_unchecked(ComplexMatrix::Identity(d, d));
}

RankOnePvm rank_one_pvm_from_povm(const Povm &povm) {
    const int d = povm.dim();
    if (static_cast<int>(povm.size()) != d) {
        std::ostringstream msg;
        msg << "a rank-1 PVM on dimension " << d << " needs " << d << " effects, got " << povm.size();
        throw Error(ErrorCode::NotProjector, msg.str());
    }
    ComplexMatrix u(d, d);
    for (int b = 0; b < d; ++b) {
        const ComplexMatrix &p = povm.effect(b);
        const double idem = max_abs(p * p - p);
        const double trace_dev = std::abs(p.trace().real() - 1.0);
        if (idem > kHermitianTol || trace_dev > kHermitianTol) {
            std::ostringstream msg;
            msg << "effect " << b << " is not a rank-1 projector (|P^2-P| = " << idem << ", |Tr P - 1| = " << trace_dev
                << ")";
            throw Error(ErrorCode::NotProjector, msg.str());
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(p);
        u.col(b) = solver.eigenvectors().col(d - 1);
    }
    return validate_rank_one_pvm(nearest_unitary(u));
}

void require_same_dim(int expected, int actual, const char *what) {
    if (expected != actual) {
        std::ostringstream msg;
        msg << what << ": dimension " << actual << " does not match " << expected;
        throw Error(ErrorCode::DimMismatch, msg.str());
    }
}

}  // namespace kduncert
