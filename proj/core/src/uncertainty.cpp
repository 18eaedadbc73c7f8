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

#include "kduncert/uncertainty.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "kduncert/errors.hpp"
#include "kduncert/random.hpp"

namespace kduncert {

std::string_view to_string(Flavor f) {
    return f == Flavor::NRe ? "NRe" : "NCl";
}

Flavor parse_flavor(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "nre") {
        return Flavor::NRe;
    }
    if (lower == "ncl") {
        return Flavor::NCl;
    }
    throw Error(ErrorCode::ParseError, "flavor must be NRe or NCl, got '" + std::string(name) + "'");
}

std::vector<double> outcome_probs(const DensityMatrix &state, const Povm &povm) {
    require_same_dim(state.dim(), povm.dim(), "POVM");
    std::vector<double> probs;
    probs.reserve(povm.size());
    for (const ComplexMatrix &m : povm.effects()) {
        probs.push_back(std::clamp(trace_of_product(m, state.matrix()).real(), 0.0, 1.0));
    }
    return probs;
}

namespace {

void check_distribution(std::span<const double> probs) {
    double sum = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (!std::isfinite(p) || p < -1e-10 || p > 1.0 + 1e-10) {
            std::ostringstream msg;
            msg << "probs[" << i << "] = " << p << " is outside [0, 1]";
            throw Error(ErrorCode::BadDistribution, msg.str());
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kCompletenessTol) {
        std::ostringstream msg;
        msg << "probabilities sum to " << sum << ", deviation " << std::abs(sum - 1.0);
        throw Error(ErrorCode::BadDistribution, msg.str());
    }
}

double clamp_probability(double p) {
    return std::clamp(p, 0.0, 1.0);
}

// Square root with roundoff-level arguments read as exact zeros: an
// eigenvalue or probability that is 0 in exact arithmetic typically comes out
// near 1e-17, and sqrt would inflate that to ~3e-9.
constexpr double kRootFloor = 1e-14;

double root(double x) {
    return x <= kRootFloor ? 0.0 : std::sqrt(x);
}

}  // namespace

double s_entropy(std::span<const double> probs) {
    check_distribution(probs);
    double s = 0.0;
    for (double p : probs) {
        p = clamp_probability(p);
        s += root(p * (1.0 - p));
    }
    return s;
}

double t_entropy(std::span<const double> probs) {
    check_distribution(probs);
    double t = 0.0;
    for (double p : probs) {
        t += root(clamp_probability(p));
    }
    return std::max(t - 1.0, 0.0);
}

double entropy(Flavor f, std::span<const double> probs) {
    return f == Flavor::NRe ? s_entropy(probs) : t_entropy(probs);
}

double total_uncertainty(const DensityMatrix &state, const Povm &povm, Flavor f) {
    return entropy(f, outcome_probs(state, povm));
}

Decomposition decompose(const DensityMatrix &state, const Povm &povm, Flavor f, const OptimizerConfig &cfg) {
    Decomposition out;
    out.flavor = f;
    out.probs = outcome_probs(state, povm);
    out.total = entropy(f, out.probs);
    if (f == Flavor::NRe) {
        out.quantum = quantum_nonreality(state, povm);
    } else {
        EffectwiseSupremum sup = quantum_nonclassicality(state, povm, cfg);
        out.quantum = sup.value;
        out.diagnostics = std::move(sup);
    }
    out.classical = clamp_nonnegative(out.total - out.quantum, "classical uncertainty");
    return out;
}

double impurity_s(const DensityMatrix &state) {
    double s = 0.0;
    for (double l : hermitian_eigenvalues(state.matrix())) {
        l = clamp_probability(l);
        s += root(l - l * l);
    }
    return s;
}

double impurity_t(const DensityMatrix &state) {
    double t = 0.0;
    for (double l : hermitian_eigenvalues(state.matrix())) {
        t += root(clamp_probability(l));
    }
    return std::max(t - 1.0, 0.0);
}

double impurity(const DensityMatrix &state, Flavor f) {
    return f == Flavor::NRe ? impurity_s(state) : impurity_t(state);
}

InfimumResult infimum_total(const DensityMatrix &state, Flavor f) {
    const double value = impurity(state, f);
    const ComplexMatrix basis = spectral_decompose(state.matrix()).eigenvectors;
    Povm povm = RankOnePvm::from_unitary_unchecked(basis).as_povm();
    const double rescored = total_uncertainty(state, povm, f);
    const double quantum = quantum_nonreality(state, povm);
    if (std::abs(rescored - value) > 1e-9 || quantum > 1e-9) {
        std::ostringstream msg;
        msg << "eigenbasis check failed: total " << rescored << " vs impurity " << value << ", quantum part "
            << quantum;
        throw Error(ErrorCode::Internal, msg.str());
    }
    return {value, std::move(povm)};
}

Povm coarse_grain(const Povm &povm, const std::vector<std::vector<int>> &partition) {
    const int n = static_cast<int>(povm.size());
    std::vector<int> seen(n, 0);
    std::vector<ComplexMatrix> effects;
    std::vector<std::string> labels;
    for (size_t blk = 0; blk < partition.size(); ++blk) {
        const auto &block = partition[blk];
        if (block.empty()) {
            throw Error(ErrorCode::BadPartition, "block " + std::to_string(blk) + " is empty");
        }
        ComplexMatrix sum = ComplexMatrix::Zero(povm.dim(), povm.dim());
        std::string label;
        for (int idx : block) {
            if (idx < 0 || idx >= n) {
                throw Error(ErrorCode::BadPartition, "index " + std::to_string(idx) + " is out of range");
            }
            if (seen[idx]++) {
                throw Error(ErrorCode::BadPartition, "index " + std::to_string(idx) + " appears more than once");
            }
            sum += povm.effect(idx);
            label += (label.empty() ? "" : "+") + povm.labels()[idx];
        }
        effects.push_back(std::move(sum));
        labels.push_back(std::move(label));
    }
    for (int i = 0; i < n; ++i) {
        if (!seen[i]) {
            throw Error(ErrorCode::BadPartition, "index " + std::to_string(i) + " is not covered");
        }
    }
    return validate_povm(std::move(effects), std::move(labels));
}

namespace {

// Corner search shared by both bounds: sign vectors with the first entry
// fixed to +1, since both objectives are even in the sign vector.
constexpr int kMaxExhaustiveDim = 10;

template <class Objective>
double corner_search(int d, const OptimizerConfig &cfg, Objective objective) {
    RealVector s = RealVector::Ones(d);
    if (d <= kMaxExhaustiveDim) {
        double best = 0.0;
        const std::uint64_t count = std::uint64_t{1} << (d - 1);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            for (int j = 1; j < d; ++j) {
                s(j) = (mask >> (j - 1)) & 1 ? -1.0 : 1.0;
            }
            best = std::max(best, objective(s));
        }
        return best;
    }
    // Larger d: multistart single-flip ascent over corners.
    double best = 0.0;
    for (int k = 0; k < cfg.n_restarts; ++k) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        std::bernoulli_distribution coin(0.5);
        for (int j = 0; j < d; ++j) {
            s(j) = coin(rng) ? 1.0 : -1.0;
        }
        double value = objective(s);
        bool improved = true;
        for (int it = 0; improved && it < cfg.max_iters; ++it) {
            improved = false;
            for (int j = 0; j < d; ++j) {
                s(j) = -s(j);
                const double v = objective(s);
                if (v > value + 1e-15) {
                    value = v;
                    improved = true;
                } else {
                    s(j) = -s(j);
                }
            }
        }
        best = std::max(best, value);
    }
    return best;
}

}  // namespace

double bound_asymmetry(const DensityMatrix &state, const RankOnePvm &pvm, const OptimizerConfig &cfg) {
    cfg.validate();
    require_same_dim(state.dim(), pvm.dim(), "PVM");
    const int d = state.dim();
    const ComplexMatrix &u = pvm.basis_unitary();
    const ComplexMatrix r = u.adjoint() * state.matrix() * u;
    ComplexMatrix comm(d, d);
    // ||[A, rho]||_1 is convex in the eigenvalues of A, so its maximum over
    // the cube [-1, 1]^d sits on a corner.
    return corner_search(d, cfg, [&](const RealVector &lambda) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                comm(j, k) = (lambda(j) - lambda(k)) * r(j, k);
            }
        }
        return trace_norm(comm) / 2.0;
    });
}

double uncertainty_relation_bound(const DensityMatrix &state, const RankOnePvm &pvm_a, const RankOnePvm &pvm_b,
                                  const OptimizerConfig &cfg) {
    cfg.validate();
    require_same_dim(state.dim(), pvm_a.dim(), "first PVM");
    require_same_dim(state.dim(), pvm_b.dim(), "second PVM");
    const int d = state.dim();
    // C(j, k) = Tr{[P_j, Q_k] rho} = 2i Im <p_j|q_k><q_k|rho|p_j>.
    const ComplexMatrix &u = pvm_a.basis_unitary();
    const ComplexMatrix &v = pvm_b.basis_unitary();
    const ComplexMatrix overlap = u.adjoint() * v;
    const ComplexMatrix cross = v.adjoint() * state.matrix() * u;
    RealMatrix c(d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            c(j, k) = 2.0 * (overlap(j, k) * cross(k, j)).imag();
        }
    }
    // For fixed lambda the best mu is sign(lambda^T C), leaving sum_k |(lambda^T C)_k|.
    return corner_search(d, cfg, [&](const RealVector &lambda) { return (c.transpose() * lambda).cwiseAbs().sum(); });
}

}  // namespace kduncert
