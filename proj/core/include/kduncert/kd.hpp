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

#ifndef KDUNCERT_KD_HPP
#define KDUNCERT_KD_HPP

#include "kduncert/quantum_types.hpp"

namespace kduncert {

/// Kirkwood-Dirac quasiprobability table, rows indexed by the first POVM's
/// outcomes and columns by the second's. Entries are stored raw: tiny
/// imaginary parts are never rounded away.
class KdTable {
   public:
    KdTable(ComplexMatrix values, int state_dim) : values_(std::move(values)), state_dim_(state_dim) {
    }

    int n_a() const {
        return static_cast<int>(values_.rows());
    }
    int n_b() const {
        return static_cast<int>(values_.cols());
    }
    int state_dim() const {
        return state_dim_;
    }
    const ComplexMatrix &values() const {
        return values_;
    }
    Complex operator()(int a, int b) const {
        return values_(a, b);
    }

    /// sum_b Pr(a, b), which equals Tr{M^a rho}.
    ComplexVector marginal_first() const {
        return values_.rowwise().sum();
    }
    /// sum_a Pr(a, b), which equals Tr{M^b rho}.
    ComplexVector marginal_second() const {
        return values_.colwise().sum().transpose();
    }
    Complex total() const {
        return values_.sum();
    }

   private:
    ComplexMatrix values_;
    int state_dim_;
};

/// Pr(a, b) = Tr{M^b M^a rho}.
KdTable kd_table(const DensityMatrix &state, const Povm &first, const Povm &second);
KdTable kd_table(const DensityMatrix &state, const Povm &first, const RankOnePvm &second);

/// l1 norm of the imaginary parts.
double table_nonreality(const KdTable &table);

/// sum |Pr(a, b)| - 1. Values in [-1e-9, 0) are reported as 0; anything more
/// negative means the table was not normalised and throws Internal.
double table_nonclassicality(const KdTable &table);

/// Split of each entry of a rank-1 x rank-1 KD table into
///   Tr{Pi^b Pi^a rho Pi^a}                         (sequential)
/// + 1/2 Tr{(rho - rho_a) Pi^b}                      (disturbance_real)
/// + i * imaginary(a, b)
/// where rho_a is the state after the nonselective binary measurement
/// {Pi^a, I - Pi^a} and imaginary(a, b) = 1/2 Tr{(rho - rho_a) Pi^{b|a}} with
/// Pi^{b|a} = e^{i pi Pi^a / 2} Pi^b e^{-i pi Pi^a / 2}.
struct JohansenComponents {
    RealMatrix sequential;
    RealMatrix disturbance_real;
    RealMatrix imaginary;

    ComplexMatrix sum() const;
};

JohansenComponents johansen_components(const DensityMatrix &state, const RankOnePvm &first, const RankOnePvm &second);

/// e^{i theta P} for an orthogonal projector P, i.e. I + (e^{i theta} - 1) P.
ComplexMatrix projector_phase(const ComplexMatrix &projector, double theta);

}  // namespace kduncert

#endif
