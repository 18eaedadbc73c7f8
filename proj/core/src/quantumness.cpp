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

#include "kduncert/quantumness.hpp"

#include <algorithm>
#include <sstream>

#include "kduncert/errors.hpp"

namespace kduncert {

double clamp_nonnegative(double value, const char *what) {
    if (value >= 0.0) {
        return value;
    }
    if (value >= -1e-9) {
        return 0.0;
    }
    std::ostringstream msg;
    msg << what << " is negative beyond tolerance: " << value;
    throw Error(ErrorCode::Internal, msg.str());
}

std::vector<ComplexMatrix> effect_starts(const ComplexMatrix &rho, const ComplexMatrix &effect) {
    const int d = static_cast<int>(rho.rows());
    const ComplexMatrix f = fourier_matrix(d);
    const ComplexMatrix rho_basis = spectral_decompose(rho).eigenvectors;
    const ComplexMatrix effect_basis = spectral_decompose(effect).eigenvectors;
    const ComplexMatrix comm = Complex(0.0, 1.0) * commutator(effect, rho);
    const ComplexMatrix comm_basis = spectral_decompose(0.5 * (comm + comm.adjoint())).eigenvectors;
    return {rho_basis, rho_basis * f, comm_basis, effect_basis, effect_basis * f};
}

double quantum_nonreality(const DensityMatrix &state, const Povm &povm) {
    require_same_dim(state.dim(), povm.dim(), "POVM");
    double total = 0.0;
    for (const ComplexMatrix &m : povm.effects()) {
        total += trace_norm(commutator(m, state.matrix())) / 2.0;
    }
    return total;
}

namespace {

template <class PerEffect>
EffectwiseSupremum effectwise(const Povm &povm, double offset, const char *what, PerEffect per_effect) {
    EffectwiseSupremum out;
    double sum = 0.0;
    for (size_t a = 0; a < povm.size(); ++a) {
        SupremumResult r = per_effect(povm.effect(a));
        sum += r.value;
        out.converged = out.converged && r.converged;
        out.iterations_used = std::max(out.iterations_used, r.iterations_used);
        out.per_effect.push_back(std::move(r));
    }
    out.value = clamp_nonnegative(sum - offset, what);
    return out;
}

EffectwiseSupremum diagonal_effectwise(const DensityMatrix &state, const Povm &povm, const OptimizerConfig &cfg,
                                       DiagonalFunctional functional, double offset, const char *what) {
    require_same_dim(state.dim(), povm.dim(), "POVM");
    cfg.validate();
    const ComplexMatrix &rho = state.matrix();
    return effectwise(povm, offset, what, [&](const ComplexMatrix &m) {
        const std::vector<ComplexMatrix> starts =
            cfg.include_structured_starts ? effect_starts(rho, m) : std::vector<ComplexMatrix>{};
        return sup_diagonal_functional(m * rho, functional, cfg, starts);
    });
}

EffectwiseSupremum product_effectwise(const DensityMatrix &state, const Povm &povm, std::span<const int> dims,
                                      const OptimizerConfig &cfg, DiagonalFunctional functional, double offset,
                                      const char *what) {
    require_same_dim(state.dim(), povm.dim(), "POVM");
    int total = 1;
    for (int d : dims) {
        total *= d;
    }
    require_same_dim(state.dim(), total, "product of factor dimensions");
    const ComplexMatrix &rho = state.matrix();
    return effectwise(povm, offset, what, [&](const ComplexMatrix &m) {
        const ComplexMatrix op = m * rho;
        return sup_over_product_pvm(
            [&](const RankOnePvm &basis) {
                return evaluate_diagonal_functional(op, functional, basis.basis_unitary());
            },
            dims, cfg);
    });
}

}  // namespace

EffectwiseSupremum quantum_nonreality_variational(const DensityMatrix &state, const Povm &povm,
                                                  const OptimizerConfig &cfg) {
    return diagonal_effectwise(state, povm, cfg, DiagonalFunctional::ImaginaryModulus, 0.0, "nonreality");
}

EffectwiseSupremum quantum_nonclassicality(const DensityMatrix &state, const Povm &povm, const OptimizerConfig &cfg) {
    return diagonal_effectwise(state, povm, cfg, DiagonalFunctional::Modulus, 1.0, "nonclassicality");
}

EffectwiseSupremum quantum_nonreality_product(const DensityMatrix &state, const Povm &povm,
                                              std::span<const int> dims, const OptimizerConfig &cfg) {
    return product_effectwise(state, povm, dims, cfg, DiagonalFunctional::ImaginaryModulus, 0.0, "nonreality");
}

EffectwiseSupremum quantum_nonclassicality_product(const DensityMatrix &state, const Povm &povm,
                                                   std::span<const int> dims, const OptimizerConfig &cfg) {
    return product_effectwise(state, povm, dims, cfg, DiagonalFunctional::Modulus, 1.0, "nonclassicality");
}

}  // namespace kduncert
