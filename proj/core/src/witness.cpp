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

#include "kduncert/witness.hpp"

#include <cmath>
#include <sstream>

#include "kduncert/errors.hpp"
#include "kduncert/quantumness.hpp"
#include "kduncert/random.hpp"

namespace kduncert {

WeakValueTable weak_values(const DensityMatrix &state, const Povm &povm, const RankOnePvm &basis) {
    require_same_dim(state.dim(), povm.dim(), "POVM");
    require_same_dim(state.dim(), basis.dim(), "postselection basis");
    const ComplexMatrix &u = basis.basis_unitary();
    const ComplexMatrix &rho = state.matrix();
    const int n_a = static_cast<int>(povm.size());
    const int n_b = basis.dim();

    WeakValueTable t;
    t.values = ComplexMatrix::Zero(n_a, n_b);
    t.undefined_mask.setConstant(n_a, n_b, false);
    const ComplexMatrix rho_u = rho * u;
    for (int b = 0; b < n_b; ++b) {
        t.postselect_probs.push_back(u.col(b).dot(rho_u.col(b)).real());
    }
    for (int a = 0; a < n_a; ++a) {
        const ComplexMatrix m_rho_u = povm.effect(a) * rho_u;
        for (int b = 0; b < n_b; ++b) {
            const double p = t.postselect_probs[b];
            if (p <= kPostselectionFloor) {
                t.undefined_mask(a, b) = true;
            } else {
                t.values(a, b) = u.col(b).dot(m_rho_u.col(b)) / p;
            }
        }
    }
    return t;
}

WeakValueIntegrands quantum_via_weak_values(const DensityMatrix &state, const Povm &povm, const RankOnePvm &basis) {
    const WeakValueTable t = weak_values(state, povm, basis);
    double nre = 0.0;
    double modulus = 0.0;
    for (Eigen::Index a = 0; a < t.values.rows(); ++a) {
        for (Eigen::Index b = 0; b < t.values.cols(); ++b) {
            if (t.undefined_mask(a, b)) {
                continue;
            }
            nre += std::abs(t.values(a, b).imag()) * t.postselect_probs[b];
            modulus += std::abs(t.values(a, b)) * t.postselect_probs[b];
        }
    }
    return {nre, clamp_nonnegative(modulus - 1.0, "weak-value nonclassicality")};
}

double strangeness(Complex w) {
    return std::max(std::abs(w.imag()), -w.real());
}

namespace {

std::optional<WitnessEntry> strangest_entry(const DensityMatrix &state, const Povm &povm, const ComplexMatrix &u,
                                            double threshold) {
    const RankOnePvm basis = RankOnePvm::from_unitary_unchecked(nearest_unitary(u));
    const WeakValueTable t = weak_values(state, povm, basis);
    std::optional<WitnessEntry> best;
    double best_score = threshold;
    for (int a = 0; a < t.values.rows(); ++a) {
        for (int b = 0; b < t.values.cols(); ++b) {
            if (!t.defined(a, b)) {
                continue;
            }
            const double score = strangeness(t.values(a, b));
            if (score > best_score + (best ? 1e-12 : 0.0)) {
                best_score = score;
                best = WitnessEntry{a, b, t.values(a, b), basis};
            }
        }
    }
    return best;
}

}  // namespace

WitnessReport contextuality_witness(const DensityMatrix &state, const Povm &povm, const OptimizerConfig &cfg,
                                    double threshold) {
    cfg.validate();
    if (!std::isfinite(threshold) || threshold < 0.0) {
        throw Error(ErrorCode::BadConfig, "threshold must be a finite non-negative number");
    }
    WitnessReport report;
    report.threshold = threshold;
    report.nre = quantum_nonreality(state, povm);
    const EffectwiseSupremum ncl = quantum_nonclassicality(state, povm, cfg);
    report.ncl = ncl.value;
    report.ncl_converged = ncl.converged;
    report.contextual = report.nre > threshold;
    report.inconsistent = report.contextual != (report.ncl > threshold);
    if (!report.contextual) {
        return report;
    }

    const ComplexMatrix &rho = state.matrix();
    std::vector<ComplexMatrix> candidates;
    for (const ComplexMatrix &m : povm.effects()) {
        const ComplexMatrix comm = Complex(0.0, 1.0) * commutator(m, rho);
        candidates.push_back(spectral_decompose(0.5 * (comm + comm.adjoint())).eigenvectors);
    }
    for (const SupremumResult &r : ncl.per_effect) {
        candidates.push_back(r.best_basis.basis_unitary());
    }
    for (const ComplexMatrix &u : candidates) {
        if ((report.witness = strangest_entry(state, povm, u, threshold))) {
            return report;
        }
    }
    const std::uint64_t scan_seed = derive_seed(cfg.seed, 0x5717e55ULL);
    for (int k = 0; k < cfg.n_restarts; ++k) {
        const ComplexMatrix u = haar_random_unitary(state.dim(), derive_seed(scan_seed, static_cast<std::uint64_t>(k)));
        if ((report.witness = strangest_entry(state, povm, u, threshold))) {
            return report;
        }
    }
    std::ostringstream msg;
    msg << "nonreality " << report.nre << " exceeds threshold " << threshold
        << " but no basis exposed a strange weak value";
    throw Error(ErrorCode::WitnessNotFound, msg.str());
}

DensityMatrix lueders_update(const DensityMatrix &state, const ComplexMatrix &projector) {
    require_square(projector, "projector");
    require_same_dim(state.dim(), static_cast<int>(projector.rows()), "projector");
    const double herm = hermiticity_deviation(projector);
    const double idem = max_abs(projector * projector - projector);
    if (!all_finite(projector) || herm > kHermitianTol || idem > kHermitianTol) {
        std::ostringstream msg;
        msg << "projector deviates from P = P^dagger = P^2 (hermiticity " << herm << ", idempotence " << idem << ")";
        throw Error(ErrorCode::NotProjector, msg.str());
    }
    return validate_density(binary_dephase(state.matrix(), projector));
}

double disturbance_nonreality(const DensityMatrix &state, const RankOnePvm &pvm) {
    require_same_dim(state.dim(), pvm.dim(), "PVM");
    double total = 0.0;
    for (int a = 0; a < pvm.dim(); ++a) {
        total += trace_norm(state.matrix() - lueders_update(state, pvm.projector(a)).matrix());
    }
    return total / 2.0;
}

}  // namespace kduncert
