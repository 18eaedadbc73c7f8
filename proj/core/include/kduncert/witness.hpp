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

#ifndef KDUNCERT_WITNESS_HPP
#define KDUNCERT_WITNESS_HPP

#include <optional>

#include "kduncert/kd.hpp"
#include "kduncert/optimize.hpp"
#include "kduncert/quantum_types.hpp"

namespace kduncert {

/// Postselection probabilities at or below this leave the weak value undefined.
inline constexpr double kPostselectionFloor = 1e-12;
inline constexpr double kDefaultWitnessThreshold = 1e-7;

struct WeakValueTable {
    /// n_a x n_b; undefined entries hold 0.
    ComplexMatrix values;
    /// <b|rho|b> for each basis vector.
    std::vector<double> postselect_probs;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> undefined_mask;

    bool defined(int a, int b) const {
        return !undefined_mask(a, b);
    }
};

/// M_w^a(b) = <b|M^a rho|b> / <b|rho|b>.
WeakValueTable weak_values(const DensityMatrix &state, const Povm &povm, const RankOnePvm &basis);

struct WeakValueIntegrands {
    /// Sum_{a,b} |Im M_w^a(b)| Pr(b)
    double nre;
    /// Sum_{a,b} |M_w^a(b)| Pr(b) - 1
    double ncl;
};

/// Weak-value averages for the given basis. Undefined entries contribute 0.
WeakValueIntegrands quantum_via_weak_values(const DensityMatrix &state, const Povm &povm, const RankOnePvm &basis);

/// max(|Im w|, -Re w); positive values beyond a threshold mark a strange weak value.
double strangeness(Complex w);

struct WitnessEntry {
    int a;
    int b;
    Complex weak_value;
    RankOnePvm basis;
};

struct WitnessReport {
    bool contextual = false;
    double nre = 0.0;
    double ncl = 0.0;
    double threshold = kDefaultWitnessThreshold;
    std::optional<WitnessEntry> witness;
    /// Set when nre and ncl disagree about crossing the threshold.
    bool inconsistent = false;
    bool ncl_converged = true;
};

/// Decides contextuality from the nonreality and, when contextual, locates a
/// strange weak value. Bases are scanned in this order: the eigenbasis of
/// i[M^a, rho] for each a, the best nonclassicality bases, then
/// cfg.n_restarts Haar bases. Within the first basis holding a strange entry,
/// the entry of largest strangeness wins (ties go to the lowest (a, b)).
/// Throws WitnessNotFound if contextual and no basis exposes one.
WitnessReport contextuality_witness(const DensityMatrix &state, const Povm &povm, const OptimizerConfig &cfg,
                                    double threshold = kDefaultWitnessThreshold);

/// P rho P + (I - P) rho (I - P). Throws NotProjector unless P is Hermitian
/// and idempotent within 1e-10.
DensityMatrix lueders_update(const DensityMatrix &state, const ComplexMatrix &projector);

/// (1/2) Sum_a ||rho - rho_{Pi^a}||_1 over the Lueders updates of each basis projector.
double disturbance_nonreality(const DensityMatrix &state, const RankOnePvm &pvm);

}  // namespace kduncert

#endif
