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

#include "selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "kduncert/errors.hpp"
#include "kduncert/kd.hpp"
#include "kduncert/quantumness.hpp"
#include "kduncert/random.hpp"
#include "kduncert/uncertainty.hpp"
#include "kduncert/witness.hpp"

namespace kduncert::selftest {

namespace {

struct Ctx {
    Rng rng;
    std::vector<int> dims;
    OptimizerConfig cfg;

    int dim(int i) const {
        return dims[static_cast<size_t>(i) % dims.size()];
    }
};

struct Measure {
    double worst = 0.0;
    int worst_instance = -1;

    void note(double v, int instance) {
        if (worst_instance < 0 || v > worst || std::isnan(v)) {
            worst = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
            worst_instance = instance;
        }
    }
};

using Body = std::function<void(Ctx &, int, Measure &)>;

struct Property {
    const char *name;
    const char *module;
    int default_count;
    double tolerance;
    Body body;
};

// ---- instance generators ----

int uniform_int(Rng &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

RealVector simplex_point(int n, Rng &rng) {
    std::exponential_distribution<double> e(1.0);
    RealVector p(n);
    for (int i = 0; i < n; ++i) {
        p(i) = e(rng);
    }
    return p / p.sum();
}

DensityMatrix any_state(int d, Rng &rng) {
    return random_density(d, uniform_int(rng, 1, d), rng);
}

DensityMatrix pure_random_state(int d, Rng &rng) {
    return pure_state(ginibre(d, 1, rng).col(0));
}

Povm any_povm(int d, Rng &rng) {
    if (uniform_int(rng, 0, 2) == 0) {
        return random_rank_one_pvm(d, rng).as_povm();
    }
    return random_povm(d, uniform_int(rng, 2, d + 2), rng);
}

DensityMatrix diagonal_state(const ComplexMatrix &u, Rng &rng) {
    const RealVector p = simplex_point(static_cast<int>(u.rows()), rng);
    return validate_density(u * p.cast<Complex>().asDiagonal() * u.adjoint());
}

Povm diagonal_povm(const ComplexMatrix &u, int n, Rng &rng) {
    const int d = static_cast<int>(u.rows());
    RealMatrix w(n, d);
    for (int j = 0; j < d; ++j) {
        w.col(j) = simplex_point(n, rng);
    }
    std::vector<ComplexMatrix> effects;
    for (int a = 0; a < n; ++a) {
        const RealVector row = w.row(a).transpose();
        effects.push_back(u * row.cast<Complex>().asDiagonal() * u.adjoint());
    }
    return validate_povm(std::move(effects));
}

DensityMatrix conjugate(const DensityMatrix &s, const ComplexMatrix &v) {
    return validate_density(v * s.matrix() * v.adjoint());
}

Povm conjugate(const Povm &p, const ComplexMatrix &v) {
    std::vector<ComplexMatrix> effects;
    for (const ComplexMatrix &m : p.effects()) {
        effects.push_back(v * m * v.adjoint());
    }
    return validate_povm(std::move(effects));
}

DensityMatrix mix(const DensityMatrix &a, const DensityMatrix &b, double w) {
    return validate_density(w * a.matrix() + (1.0 - w) * b.matrix());
}

Povm mix(const Povm &a, const Povm &b, double w) {
    std::vector<ComplexMatrix> effects;
    for (size_t i = 0; i < a.size(); ++i) {
        effects.push_back(w * a.effect(i) + (1.0 - w) * b.effect(i));
    }
    return validate_povm(std::move(effects));
}

ComplexMatrix random_hermitian(int d, Rng &rng) {
    const ComplexMatrix g = ginibre(d, d, rng);
    return (g + g.adjoint()) / 2.0;
}

// ---- quantities checked by several properties ----

struct Parts {
    double total;
    double quantum;
    double classical;
};

Parts parts(const DensityMatrix &s, const Povm &p, Flavor f, const OptimizerConfig &cfg) {
    const Decomposition d = decompose(s, p, f, cfg);
    return {d.total, d.quantum, d.classical};
}

double quantum(const DensityMatrix &s, const Povm &p, Flavor f, const OptimizerConfig &cfg) {
    return f == Flavor::NRe ? quantum_nonreality(s, p) : quantum_nonclassicality(s, p, cfg).value;
}

constexpr Flavor kFlavors[] = {Flavor::NRe, Flavor::NCl};

Complex weak_value_from_scratch(const DensityMatrix &s, const ComplexMatrix &effect, const ComplexVector &b) {
    return b.dot(effect * s.matrix() * b) / b.dot(s.matrix() * b);
}

// ---- the catalogue ----

const std::vector<Property> &catalogue() {
    static const std::vector<Property> props = {
        // qstate-core
        {"core.trace_norm_spectrum", "qstate-core", 200, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const ComplexMatrix h = random_hermitian(2 + i % 7, c.rng);
             m.note(std::abs(trace_norm(h) - hermitian_eigenvalues(h).cwiseAbs().sum()), i);
         }},
        {"core.spectral_roundtrip", "qstate-core", 200, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const ComplexMatrix h = random_hermitian(2 + i % 7, c.rng);
             m.note(max_abs(spectral_decompose(h).reconstruct() - h), i);
         }},
        {"core.operator_sqrt", "qstate-core", 200, 1e-8,
         [](Ctx &c, int i, Measure &m) {
             const ComplexMatrix h = any_state(c.dim(i), c.rng).matrix();
             const ComplexMatrix r = operator_sqrt(h);
             m.note(max_abs(r * r - h), i);
         }},
        {"core.random_validators", "qstate-core", 1000, 0.0,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             double failures = 0.0;
             try {
                 validate_density(random_density(d, uniform_int(c.rng, 1, d), c.rng).matrix());
                 validate_povm(random_povm(d, uniform_int(c.rng, 1, d + 3), c.rng).effects());
                 validate_rank_one_pvm(random_rank_one_pvm(d, c.rng).basis_unitary());
             } catch (const Error &) {
                 failures = 1.0;
             }
             m.note(failures, i);
         }},
        {"core.partial_trace", "qstate-core", 200, 1e-10,
         [](Ctx &c, int i, Measure &m) {
             const int d1 = c.dim(i);
             const int d2 = c.dim(i + 1);
             const ComplexMatrix r1 = any_state(d1, c.rng).matrix();
             const ComplexMatrix r2 = any_state(d2, c.rng).matrix();
             const ComplexMatrix joint = tensor(r1, r2);
             m.note(std::max(max_abs(partial_trace(joint, d1, d2, Subsystem::First) - r1),
                             max_abs(partial_trace(joint, d1, d2, Subsystem::Second) - r2)),
                    i);
         }},
        // kd-quasiprob
        {"kd.marginals", "kd-quasiprob", 500, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             const Povm q = any_povm(d, c.rng);
             const KdTable t = kd_table(s, p, q);
             double worst = std::abs(t.total() - 1.0);
             const ComplexVector first = t.marginal_first();
             const ComplexVector second = t.marginal_second();
             for (size_t a = 0; a < p.size(); ++a) {
                 worst = std::max(worst, std::abs(first(a) - trace_of_product(p.effect(a), s.matrix())));
             }
             for (size_t b = 0; b < q.size(); ++b) {
                 worst = std::max(worst, std::abs(second(b) - trace_of_product(q.effect(b), s.matrix())));
             }
             m.note(worst, i);
         }},
        {"kd.commuting_nonnegative", "kd-quasiprob", 200, 1e-10,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const ComplexMatrix u = haar_random_unitary(d, c.rng);
             const DensityMatrix s = diagonal_state(u, c.rng);
             const Povm p = diagonal_povm(u, uniform_int(c.rng, 2, d + 1), c.rng);
             const KdTable t = kd_table(s, p, any_povm(d, c.rng));
             const ComplexMatrix &v = t.values();
             m.note(std::max(v.imag().cwiseAbs().maxCoeff(), std::max(0.0, -v.real().minCoeff())), i);
         }},
        {"kd.nonclassicality_nonnegative", "kd-quasiprob", 500, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const KdTable t = kd_table(any_state(d, c.rng), any_povm(d, c.rng), any_povm(d, c.rng));
             m.note(std::max(0.0, 1.0 - t.values().cwiseAbs().sum()), i);
         }},
        {"kd.diagonal_table", "kd-quasiprob", 200, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const RankOnePvm pvm = random_rank_one_pvm(d, c.rng);
             const RealVector lambda = simplex_point(d, c.rng);
             const ComplexMatrix &u = pvm.basis_unitary();
             const DensityMatrix s = validate_density(u * lambda.cast<Complex>().asDiagonal() * u.adjoint());
             const KdTable t = kd_table(s, pvm.as_povm(), pvm);
             m.note(max_abs(t.values() - ComplexMatrix(lambda.cast<Complex>().asDiagonal())), i);
         }},
        {"kd.johansen_reconstruction", "kd-quasiprob", 100, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const RankOnePvm a = random_rank_one_pvm(d, c.rng);
             const RankOnePvm b = random_rank_one_pvm(d, c.rng);
             m.note(max_abs(johansen_components(s, a, b).sum() - kd_table(s, a.as_povm(), b).values()), i);
         }},
        // pvm-optimize
        {"opt.trace_norm_sup", "pvm-optimize", 100, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = 2 + i % 3;
             const ComplexMatrix g = ginibre(d, d, c.rng);
             const ComplexMatrix normal = (i % 2 == 0) ? ComplexMatrix(g + g.adjoint()) : ComplexMatrix(g - g.adjoint());
             const SupremumResult r = sup_diagonal_functional(normal, DiagonalFunctional::Modulus, c.cfg);
             m.note(std::abs(r.value - trace_norm(normal)), i);
         }},
        {"opt.nre_variational_agreement", "pvm-optimize", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = 2 + i % 2;
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = random_rank_one_pvm(d, c.rng).as_povm();
             m.note(std::abs(quantum_nonreality_variational(s, p, c.cfg).value - quantum_nonreality(s, p)), i);
         }},
        {"opt.ncomm1_vanish_together", "pvm-optimize", 200, 0.0,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             DensityMatrix s = any_state(d, c.rng);
             Povm p = any_povm(d, c.rng);
             if (i % 2 == 0) {
                 const ComplexMatrix u = haar_random_unitary(d, c.rng);
                 s = diagonal_state(u, c.rng);
                 p = diagonal_povm(u, uniform_int(c.rng, 2, d + 1), c.rng);
             }
             const double eps = 1e-7;
             const bool nre = quantum_nonreality(s, p) > eps;
             const bool ncl = quantum_nonclassicality(s, p, c.cfg).value > eps;
             const bool expected = i % 2 != 0;
             m.note((nre != ncl || nre != expected) ? 1.0 : 0.0, i);
         }},
        {"opt.ncomm2_covariance_nre", "pvm-optimize", 50, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             const ComplexMatrix v = haar_random_unitary(d, c.rng);
             m.note(std::abs(quantum_nonreality(conjugate(s, v), conjugate(p, v)) - quantum_nonreality(s, p)), i);
         }},
        {"opt.ncomm2_covariance_ncl", "pvm-optimize", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             const ComplexMatrix v = haar_random_unitary(d, c.rng);
             m.note(std::abs(quantum_nonclassicality(conjugate(s, v), conjugate(p, v), c.cfg).value -
                             quantum_nonclassicality(s, p, c.cfg).value),
                    i);
         }},
        {"opt.ncomm3_convexity", "pvm-optimize", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const int n = uniform_int(c.rng, 2, d + 1);
             const DensityMatrix s1 = any_state(d, c.rng);
             const DensityMatrix s2 = any_state(d, c.rng);
             const Povm p1 = random_povm(d, n, c.rng);
             const Povm p2 = random_povm(d, n, c.rng);
             const double w = uniform(c.rng, 0.0, 1.0);
             const double v = uniform(c.rng, 0.0, 1.0);
             double worst = -1.0;
             for (Flavor f : kFlavors) {
                 const double mixed = quantum(mix(s1, s2, w), mix(p1, p2, v), f, c.cfg);
                 const double bound = w * v * quantum(s1, p1, f, c.cfg) + w * (1 - v) * quantum(s1, p2, f, c.cfg) +
                                      (1 - w) * v * quantum(s2, p1, f, c.cfg) +
                                      (1 - w) * (1 - v) * quantum(s2, p2, f, c.cfg);
                 worst = std::max(worst, mixed - bound);
             }
             m.note(worst, i);
         }},
        {"opt.qu2_lack_of_access", "pvm-optimize", 30, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int dims[] = {2, 2};
             const DensityMatrix joint = any_state(4, c.rng);
             const DensityMatrix reduced =
                 validate_density(partial_trace(joint.matrix(), 2, 2, Subsystem::First));
             const Povm local = any_povm(2, c.rng);
             std::vector<ComplexMatrix> extended;
             for (const ComplexMatrix &e : local.effects()) {
                 extended.push_back(tensor(e, ComplexMatrix::Identity(2, 2)));
             }
             const Povm global = validate_povm(std::move(extended));
             const double nre = quantum_nonreality(reduced, local) - quantum_nonreality(joint, global);
             const double ncl = quantum_nonclassicality(reduced, local, c.cfg).value -
                                quantum_nonclassicality_product(joint, global, dims, c.cfg).value;
             m.note(std::max(nre, ncl), i);
         }},
        {"opt.qu3_coarse_graining", "pvm-optimize", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const int n = 4;
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = random_povm(d, n, c.rng);
             std::vector<int> order(n);
             std::iota(order.begin(), order.end(), 0);
             std::shuffle(order.begin(), order.end(), c.rng);
             const int cut1 = uniform_int(c.rng, 1, n - 1);
             const int cut2 = uniform_int(c.rng, cut1, n - 1);
             std::vector<std::vector<int>> partition{{order.begin(), order.begin() + cut1}};
             if (cut2 > cut1) {
                 partition.emplace_back(order.begin() + cut1, order.begin() + cut2);
             }
             partition.emplace_back(order.begin() + cut2, order.end());
             const Povm coarse = coarse_grain(p, partition);
             double worst = -1.0;
             for (Flavor f : kFlavors) {
                 worst = std::max(worst, quantum(s, coarse, f, c.cfg) - quantum(s, p, f, c.cfg));
             }
             m.note(worst, i);
         }},
        // uncertainty
        {"unc.qu1_upper_bound", "uncertainty", 300, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             double worst = -1.0;
             for (Flavor f : kFlavors) {
                 const Parts r = parts(s, p, f, c.cfg);
                 worst = std::max(worst, r.quantum - r.total);
             }
             m.note(worst, i);
         }},
        {"unc.qu1_pure_equality", "uncertainty", 100, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = pure_random_state(d, c.rng);
             const Povm p = random_rank_one_pvm(d, c.rng).as_povm();
             double worst = 0.0;
             for (Flavor f : kFlavors) {
                 const Parts r = parts(s, p, f, c.cfg);
                 worst = std::max(worst, std::abs(r.total - r.quantum));
             }
             m.note(worst, i);
         }},
        {"unc.qcd1_pure_classical_zero", "uncertainty", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = pure_random_state(d, c.rng);
             const Povm p = random_rank_one_pvm(d, c.rng).as_povm();
             double worst = 0.0;
             for (Flavor f : kFlavors) {
                 worst = std::max(worst, std::abs(parts(s, p, f, c.cfg).classical));
             }
             m.note(worst, i);
         }},
        {"unc.qcd2_commuting", "uncertainty", 50, 1e-8,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const ComplexMatrix u = haar_random_unitary(d, c.rng);
             const DensityMatrix s = diagonal_state(u, c.rng);
             const Povm p = diagonal_povm(u, uniform_int(c.rng, 2, d + 1), c.rng);
             double worst = 0.0;
             for (Flavor f : kFlavors) {
                 const Parts r = parts(s, p, f, c.cfg);
                 worst = std::max({worst, r.quantum, std::abs(r.classical - r.total)});
             }
             m.note(worst, i);
         }},
        {"unc.qcd3_classical_concavity", "uncertainty", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s1 = any_state(d, c.rng);
             const DensityMatrix s2 = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             const double w = uniform(c.rng, 0.0, 1.0);
             double worst = -1.0;
             for (Flavor f : kFlavors) {
                 const double mixed = parts(mix(s1, s2, w), p, f, c.cfg).classical;
                 const double average =
                     w * parts(s1, p, f, c.cfg).classical + (1 - w) * parts(s2, p, f, c.cfg).classical;
                 worst = std::max(worst, average - mixed);
             }
             m.note(worst, i);
         }},
        {"unc.qcd4_permutation", "uncertainty", 50, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             std::vector<int> order(p.size());
             std::iota(order.begin(), order.end(), 0);
             std::shuffle(order.begin(), order.end(), c.rng);
             std::vector<ComplexMatrix> effects;
             for (int a : order) {
                 effects.push_back(p.effect(a));
             }
             const Povm permuted = validate_povm(std::move(effects));
             double worst = 0.0;
             for (Flavor f : kFlavors) {
                 const Parts x = parts(s, p, f, c.cfg);
                 const Parts y = parts(s, permuted, f, c.cfg);
                 worst = std::max({worst, std::abs(x.total - y.total), std::abs(x.quantum - y.quantum),
                                   std::abs(x.classical - y.classical)});
             }
             m.note(worst, i);
         }},
        {"unc.qcd5_unitary_covariance", "uncertainty", 50, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             const ComplexMatrix v = haar_random_unitary(d, c.rng);
             double worst = 0.0;
             for (Flavor f : kFlavors) {
                 const Parts x = parts(s, p, f, c.cfg);
                 const Parts y = parts(conjugate(s, v), conjugate(p, v), f, c.cfg);
                 worst = std::max({worst, std::abs(x.total - y.total), std::abs(x.quantum - y.quantum),
                                   std::abs(x.classical - y.classical)});
             }
             m.note(worst, i);
         }},
        {"unc.qu4_coherence_faithfulness", "uncertainty", 50, 0.0,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const RankOnePvm pvm = random_rank_one_pvm(d, c.rng);
             const bool incoherent = i % 2 == 0;
             const DensityMatrix s = incoherent ? diagonal_state(pvm.basis_unitary(), c.rng) : any_state(d, c.rng);
             const Povm p = pvm.as_povm();
             bool ok = true;
             for (Flavor f : kFlavors) {
                 ok = ok && ((quantum(s, p, f, c.cfg) <= 1e-8) == incoherent);
             }
             m.note(ok ? 0.0 : 1.0, i);
         }},
        {"unc.maximal_trichotomy", "uncertainty", 40, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = 2 + i % 4;
             double worst = 0.0;
             // (i) maximally coherent pure state, incoherent rank-1 PVM.
             const DensityMatrix coherent = pure_state(ComplexVector::Ones(d));
             const Povm incoherent = computational_basis(d).as_povm();
             const Parts nre = parts(coherent, incoherent, Flavor::NRe, c.cfg);
             const Parts ncl = parts(coherent, incoherent, Flavor::NCl, c.cfg);
             worst = std::max({worst, std::abs(nre.total - std::sqrt(d - 1.0)), std::abs(nre.quantum - nre.total),
                               std::abs(ncl.total - (std::sqrt(double(d)) - 1.0)),
                               std::abs(ncl.quantum - ncl.total)});
             // (ii) maximally mixed state, any rank-1 PVM.
             const DensityMatrix mixed = validate_density(ComplexMatrix::Identity(d, d) / double(d));
             const Povm pvm = random_rank_one_pvm(d, c.rng).as_povm();
             // (iii) totally degenerate POVM, any state.
             const int n = uniform_int(c.rng, 1, d + 1);
             const Povm degenerate = validate_povm(
                 std::vector<ComplexMatrix>(n, ComplexMatrix::Identity(d, d) / double(n)));
             const DensityMatrix s = any_state(d, c.rng);
             for (Flavor f : kFlavors) {
                 const Parts x = parts(mixed, pvm, f, c.cfg);
                 const Parts y = parts(s, degenerate, f, c.cfg);
                 worst = std::max({worst, std::abs(x.classical - x.total), std::abs(y.classical - y.total)});
             }
             m.note(worst, i);
         }},
        {"unc.prop2_infimum", "uncertainty", 50, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = random_density(d, d, c.rng);
             const ComplexMatrix &rho = s.matrix();
             double worst = 0.0;
             for (Flavor f : kFlavors) {
                 const InfimumResult inf = infimum_total(s, f);
                 // Operator-function form of the impurities, independent of the eigenvalue path.
                 const double formula = f == Flavor::NRe ? operator_sqrt(rho - rho * rho).trace().real()
                                                         : operator_sqrt(rho).trace().real() - 1.0;
                 worst = std::max(worst, std::abs(inf.value - formula));
                 worst = std::max(worst, quantum(s, inf.achieving_povm, f, c.cfg));
                 // Fine-grained (rank-1) POVMs; coarse effects can score below the impurity.
                 for (int k = 0; k < 100; ++k) {
                     const Povm p = k % 2 == 0 ? random_rank_one_povm(d, uniform_int(c.rng, d, d + 3), c.rng)
                                               : random_rank_one_pvm(d, c.rng).as_povm();
                     worst = std::max(worst, inf.value - total_uncertainty(s, p, f));
                 }
             }
             m.note(worst, i);
         }},
        {"unc.tsallis_half", "uncertainty", 200, 1e-12,
         [](Ctx &c, int i, Measure &m) {
             const RealVector p = simplex_point(uniform_int(c.rng, 1, 8), c.rng);
             const std::vector<double> probs(p.data(), p.data() + p.size());
             const double tsallis_half = (p.cwiseSqrt().sum() - 1.0) / (1.0 - 0.5);
             m.note(std::abs(2.0 * t_entropy(probs) - tsallis_half), i);
         }},
        {"unc.eq16_asymmetry_bound", "uncertainty", 100, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const RankOnePvm pvm = random_rank_one_pvm(d, c.rng);
             m.note(bound_asymmetry(s, pvm, c.cfg) - s_entropy(outcome_probs(s, pvm.as_povm())), i);
         }},
        {"unc.eq17_relation_bound", "uncertainty", 100, 1e-6,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const RankOnePvm a = random_rank_one_pvm(d, c.rng);
             const RankOnePvm b = random_rank_one_pvm(d, c.rng);
             const double sum = s_entropy(outcome_probs(s, a.as_povm())) + s_entropy(outcome_probs(s, b.as_povm()));
             m.note(uncertainty_relation_bound(s, a, b, c.cfg) - sum, i);
         }},
        // witness
        {"wit.eq18_factorization", "witness", 100, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const Povm p = any_povm(d, c.rng);
             const RankOnePvm basis = random_rank_one_pvm(d, c.rng);
             const WeakValueTable w = weak_values(s, p, basis);
             const KdTable t = kd_table(s, p, basis);
             double worst = std::abs(std::accumulate(w.postselect_probs.begin(), w.postselect_probs.end(), 0.0) - 1.0);
             for (int a = 0; a < t.n_a(); ++a) {
                 for (int b = 0; b < t.n_b(); ++b) {
                     const Complex lhs = w.defined(a, b) ? w.values(a, b) * w.postselect_probs[b] : Complex(0.0);
                     worst = std::max(worst, std::abs(lhs - t(a, b)));
                 }
             }
             const WeakValueIntegrands q = quantum_via_weak_values(s, p, basis);
             worst = std::max({worst, std::abs(q.nre - table_nonreality(t)),
                               std::abs(q.ncl - table_nonclassicality(t))});
             m.note(worst, i);
         }},
        {"wit.flag_consistency", "witness", 200, 0.0,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             DensityMatrix s = any_state(d, c.rng);
             Povm p = any_povm(d, c.rng);
             if (i % 4 == 0) {
                 const ComplexMatrix u = haar_random_unitary(d, c.rng);
                 s = diagonal_state(u, c.rng);
                 p = diagonal_povm(u, uniform_int(c.rng, 2, d + 1), c.rng);
             }
             const WitnessReport r = contextuality_witness(s, p, c.cfg);
             bool ok = !r.inconsistent && r.contextual == (i % 4 != 0) && r.contextual == r.witness.has_value();
             if (r.witness) {
                 const Complex w = weak_value_from_scratch(s, p.effect(r.witness->a),
                                                           r.witness->basis.vector(r.witness->b));
                 ok = ok && std::abs(w - r.witness->weak_value) <= 1e-9 && strangeness(w) > r.threshold;
             }
             m.note(ok ? 0.0 : 1.0, i);
         }},
        {"wit.prop3_disturbance", "witness", 200, 1e-9,
         [](Ctx &c, int i, Measure &m) {
             const int d = c.dim(i);
             const DensityMatrix s = any_state(d, c.rng);
             const RankOnePvm pvm = random_rank_one_pvm(d, c.rng);
             m.note(std::abs(disturbance_nonreality(s, pvm) - quantum_nonreality(s, pvm.as_povm())), i);
         }},
    };
    return props;
}

std::uint64_t name_hash(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : name) {
        h = (h ^ ch) * 0x100000001b3ULL;
    }
    return h;
}

PropertyResult run(const Property &prop, const Options &options, std::optional<int> instances) {
    Ctx ctx{Rng(derive_seed(options.seed, name_hash(prop.name))), options.dims, options.optimizer};
    ctx.cfg.seed = options.seed;
    const int n = instances.value_or(options.samples.value_or(prop.default_count));

    PropertyResult r;
    r.name = prop.name;
    r.module = prop.module;
    r.instances = n;
    r.tolerance = options.inject_failure == prop.name ? -1.0 : prop.tolerance;
    const auto start = std::chrono::steady_clock::now();
    Measure m;
    for (int i = 0; i < n; ++i) {
        try {
            prop.body(ctx, i, m);
        } catch (const Error &) {
            m.note(std::numeric_limits<double>::infinity(), i);
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.worst = n > 0 ? m.worst : 0.0;
    r.worst_instance = m.worst_instance;
    r.passed = r.worst <= r.tolerance;
    return r;
}

void check_options(const Options &options) {
    if (options.dims.empty()) {
        throw Error(ErrorCode::BadConfig, "dims must not be empty");
    }
    for (int d : options.dims) {
        if (d < 2 || d > 16) {
            throw Error(ErrorCode::BadConfig, "dims entries must lie in [2, 16], got " + std::to_string(d));
        }
    }
    if (options.samples && *options.samples < 1) {
        throw Error(ErrorCode::BadConfig, "samples must be >= 1");
    }
    if (!options.inject_failure.empty()) {
        const auto &names = property_names();
        if (std::find(names.begin(), names.end(), options.inject_failure) == names.end()) {
            throw Error(ErrorCode::BadConfig, "unknown property '" + options.inject_failure + "'");
        }
    }
    options.optimizer.validate();
}

}  // namespace

const std::vector<std::string> &property_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const Property &p : catalogue()) {
            out.emplace_back(p.name);
        }
        return out;
    }();
    return names;
}

PropertyResult run_property(std::string_view name, const Options &options, std::optional<int> instances) {
    check_options(options);
    for (const Property &p : catalogue()) {
        if (p.name == name) {
            return run(p, options, instances);
        }
    }
    throw Error(ErrorCode::BadConfig, "unknown property '" + std::string(name) + "'");
}

Report run_all(const Options &options) {
    check_options(options);
    Report report;
    for (const Property &p : catalogue()) {
        report.properties.push_back(run(p, options, std::nullopt));
        report.passed = report.passed && report.properties.back().passed;
        report.seconds += report.properties.back().seconds;
    }
    return report;
}

nlohmann::json to_json(const Report &report) {
    nlohmann::json props = nlohmann::json::array();
    std::vector<std::string> failed;
    for (const PropertyResult &p : report.properties) {
        props.push_back({{"name", p.name},
                         {"module", p.module},
                         {"instances", p.instances},
                         {"worst", std::isfinite(p.worst) ? nlohmann::json(p.worst) : nlohmann::json("inf")},
                         {"worst_instance", p.worst_instance},
                         {"tolerance", p.tolerance},
                         {"passed", p.passed}});
        if (!p.passed) {
            failed.push_back(p.name);
        }
    }
    return {{"passed", report.passed}, {"failed", failed}, {"properties", std::move(props)}};
}

std::string summary(const Report &report) {
    std::ostringstream out;
    int n_pass = 0;
    for (const PropertyResult &p : report.properties) {
        out << (p.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << p.name << std::right << " n="
            << std::setw(5) << p.instances << "  worst=" << std::setprecision(3) << std::scientific << p.worst
            << "  tol=" << p.tolerance << std::defaultfloat << "  " << std::fixed << std::setprecision(2) << p.seconds
            << "s" << std::defaultfloat << "\n";
        n_pass += p.passed;
    }
    out << n_pass << "/" << report.properties.size() << " properties passed in " << std::fixed
        << std::setprecision(1) << report.seconds << "s\n";
    return out.str();
}

}  // namespace kduncert::selftest
