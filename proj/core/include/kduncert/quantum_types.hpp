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

#ifndef KDUNCERT_QUANTUM_TYPES_HPP
#define KDUNCERT_QUANTUM_TYPES_HPP

#include <string>
#include <vector>

#include "kduncert/linalg.hpp"

namespace kduncert {

/// A validated state: Hermitian, unit trace and PSD within kHermitianTol.
/// Only constructible through validate_density().
class DensityMatrix {
   public:
    int dim() const {
        return static_cast<int>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    double purity() const;

   private:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    }
    friend DensityMatrix validate_density(const ComplexMatrix &m);

    ComplexMatrix matrix_;
};

DensityMatrix validate_density(const ComplexMatrix &m);

/// Pure state |psi><psi| from an (unnormalised) vector.
DensityMatrix pure_state(const ComplexVector &psi);

/// A validated POVM. Effects keep their input order; labels default to
/// "0", "1", ... when none are supplied.
class Povm {
   public:
    int dim() const {
        return dim_;
    }
    size_t size() const {
        return effects_.size();
    }
    const std::vector<ComplexMatrix> &effects() const {
        return effects_;
    }
    const ComplexMatrix &effect(size_t a) const {
        return effects_[a];
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }

   private:
    Povm(int dim, std::vector<ComplexMatrix> effects, std::vector<std::string> labels)
        : dim_(dim), effects_(std::move(effects)), labels_(std::move(labels)) {
    }
    friend Povm validate_povm(std::vector<ComplexMatrix> effects, std::vector<std::string> labels);

    int dim_;
    std::vector<ComplexMatrix> effects_;
    std::vector<std::string> labels_;
};

Povm validate_povm(std::vector<ComplexMatrix> effects, std::vector<std::string> labels = {});

/// Orthonormal rank-1 projective measurement, stored as the unitary whose
/// columns are the basis vectors |b>.
class RankOnePvm {
   public:
    int dim() const {
        return static_cast<int>(basis_.rows());
    }
    const ComplexMatrix &basis_unitary() const {
        return basis_;
    }
    auto vector(int b) const {
        return basis_.col(b);
    }
    ComplexMatrix projector(int b) const {
        return basis_.col(b) * basis_.col(b).adjoint();
    }
    std::vector<ComplexMatrix> projectors() const;
    Povm as_povm(std::vector<std::string> labels = {}) const;

    /// Wraps a matrix that the caller guarantees is unitary to working
    /// precision. Used on optimizer iterates, which stay unitary by construction.
    static RankOnePvm from_unitary_unchecked(ComplexMatrix u) {
        return RankOnePvm(std::move(u));
    }

   private:
    explicit RankOnePvm(ComplexMatrix u) : basis_(std::move(u)) {
    }
    friend RankOnePvm validate_rank_one_pvm(const ComplexMatrix &u);

    ComplexMatrix basis_;
};

/// Checks ||U^dag U - I||_inf <= kHermitianTol.
RankOnePvm validate_rank_one_pvm(const ComplexMatrix &u);

/// Computational basis of dimension d.
RankOnePvm computational_basis(int d);

/// Recovers the basis of a POVM whose effects are orthogonal rank-1
/// projectors. Throws NotProjector otherwise.
RankOnePvm rank_one_pvm_from_povm(const Povm &povm);

/// Throws DimMismatch when the two dimensions differ.
void require_same_dim(int expected, int actual, const char *what);

}  // namespace kduncert

#endif
