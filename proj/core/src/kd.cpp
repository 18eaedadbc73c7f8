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

#include "kduncert/kd.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kduncert/errors.hpp"

namespace kduncert {

KdTable kd_table(const DensityMatrix &state, const Povm &first, const Povm &second) {
    require_same_dim(state.dim(), first.dim(), "first POVM");
    require_same_dim(state.dim(), second.dim(), "second POVM");
    const Eigen::Index n_a = static_cast<Eigen::Index>(first.size());
    const Eigen::Index n_b = static_cast<Eigen::Index>(second.size());
    ComplexMatrix values(n_a, n_b);
    for (Eigen::Index a = 0; a < n_a; ++a) {
        const ComplexMatrix m_rho = first.effect(a) * state.matrix();
        for (Eigen::Index b = 0; b < n_b; ++b) {
            values(a, b) = trace_of_product(second.effect(b), m_rho);
        }
    }
    return KdTable(std::move(values), state.dim());
}

KdTable kd_table(const DensityMatrix &state, const Povm &first, const RankOnePvm &second) {
    require_same_dim(state.dim(), first.dim(), "first POVM");
    require_same_dim(state.dim(), second.dim(), "second basis");
    const ComplexMatrix &u = second.basis_unitary();
    const Eigen::Index n_a = static_cast<Eigen::Index>(first.size());
    ComplexMatrix values(n_a, u.cols());
    for (Eigen::Index a = 0; a < n_a; ++a) {
        // <b| M^a rho |b> for every column b at once.
        const ComplexMatrix m_rho_u = first.effect(a) * state.matrix() * u;
        values.row(a) = (u.conjugate().cwiseProduct(m_rho_u)).colwise().sum();
    }
    return KdTable(std::move(values), state.dim());
}

double table_nonreality(const KdTable &table) {
    return table.values().imag().cwiseAbs().sum();
}

double table_nonclassicality(const KdTable &table) {
    const double raw = table.values().cwiseAbs().sum() - 1.0;
    if (raw < -1e-9) {
        std::ostringstream msg;
        msg << "sum of moduli minus one is " << raw << "; table is not normalised";
        throw Error(ErrorCode::Internal, msg.str());
    }
    return raw < 0.0 ? 0.0 : raw;
}

ComplexMatrix projector_phase(const ComplexMatrix &projector, double theta) {
    const Complex factor = std::polar(1.0, theta) - Complex(1.0, 0.0);
    return ComplexMatrix::Identity(projector.rows(), projector.cols()) + factor * projector;
}

ComplexMatrix JohansenComponents::sum() const {
    ComplexMatrix out(sequential.rows(), sequential.cols());
    for (Eigen::Index a = 0; a < out.rows(); ++a) {
        for (Eigen::Index b = 0; b < out.cols(); ++b) {
            out(a, b) = Complex(sequential(a, b) + disturbance_real(a, b), imaginary(a, b));
        }
    }
    return out;
}

JohansenComponents johansen_components(const DensityMatrix &state, const RankOnePvm &first, const RankOnePvm &second) {
    require_same_dim(state.dim(), first.dim(), "first basis");
    require_same_dim(state.dim(), second.dim(), "second basis");
    const int d = state.dim();
    const ComplexMatrix &rho = state.matrix();
    JohansenComponents out{RealMatrix(d, d), RealMatrix(d, d), RealMatrix(d, d)};
    const std::vector<ComplexMatrix> second_proj = second.projectors();
    for (int a = 0; a < d; ++a) {
        const ComplexMatrix pa = first.projector(a);
        const ComplexMatrix delta = rho - binary_dephase(rho, pa);
        const ComplexMatrix rotate = projector_phase(pa, std::numbers::pi / 2.0);
        const ComplexMatrix pa_rho_pa = pa * rho * pa;
        for (int b = 0; b < d; ++b) {
            const ComplexMatrix &pb = second_proj[b];
            const ComplexMatrix pb_rotated = rotate * pb * rotate.adjoint();
            out.sequential(a, b) = trace_of_product(pb, pa_rho_pa).real();
            out.disturbance_real(a, b) = 0.5 * trace_of_product(delta, pb).real();
            out.imaginary(a, b) = 0.5 * trace_of_product(delta, pb_rotated).real();
        }
    }
    return out;
}

}  // namespace kduncert
