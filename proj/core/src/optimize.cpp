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

#include "kduncert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <sstream>

#include "kduncert/errors.hpp"
#include "kduncert/random.hpp"

namespace kduncert {

void OptimizerConfig::validate() const {
    std::ostringstream msg;
    if (n_restarts < 1) {
        msg << "n_restarts must be >= 1, got " << n_restarts;
    } else if (max_iters < 1) {
        msg << "max_iters must be >= 1, got " << max_iters;
    } else if (!(rel_tol > 0.0)) {
        msg << "rel_tol must be > 0, got " << rel_tol;
    } else if (!(step_init > 0.0)) {
        msg << "step_init must be > 0, got " << step_init;
    } else {
        return;
    }
    throw Error(ErrorCode::BadConfig, msg.str());
}

namespace {

enum class MoveKind { Symmetric, Antisymmetric };

struct Move {
    int factor;
    int j;
    int k;
    MoveKind kind;
};

// Right-multiplies columns j, k of u by exp(i angle G) restricted to span{e_j, e_k}.
template <class Cols>
void rotate_columns(Cols &&u, const Move &m, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const ComplexVector uj = u.col(m.j);
    const ComplexVector uk = u.col(m.k);
    if (m.kind == MoveKind::Symmetric) {
        const Complex is(0.0, s);
        u.col(m.j) = c * uj + is * uk;
        u.col(m.k) = is * uj + c * uk;
    } else {
        u.col(m.j) = c * uj - s * uk;
        u.col(m.k) = s * uj + c * uk;
    }
}

std::vector<Move> moves_for(std::span<const int> dims) {
    std::vector<Move> moves;
    for (int f = 0; f < static_cast<int>(dims.size()); ++f) {
        for (int j = 0; j < dims[f]; ++j) {
            for (int k = j + 1; k < dims[f]; ++k) {
                moves.push_back({f, j, k, MoveKind::Symmetric});
                moves.push_back({f, j, k, MoveKind::Antisymmetric});
            }
        }
    }
    return moves;
}

double step_floor(const OptimizerConfig &cfg) {
    return 1e-3 * std::sqrt(cfg.rel_tol);
}

struct AscentOutcome {
    double value;
    int iterations;
    bool converged;
};

// Objective value plus a tie-breaker that only matters where the value is
// flat.
struct Score {
    double value;
    double tie;
};

double slack(double v) {
    return 1e-15 * std::max(1.0, std::abs(v));
}

bool beats(const Score &candidate, const Score &current) {
    if (candidate.value > current.value + slack(current.value)) {
        return true;
    }
    return candidate.value >= current.value - slack(current.value) && candidate.tie > current.tie + slack(current.tie);
}

bool progressed(const Score &now, const Score &before, double rel_tol) {
    return now.value - before.value > rel_tol * std::max(std::abs(now.value), 1e-12) ||
           now.tie - before.tie > rel_tol * std::max(std::abs(now.tie), 1e-12);
}

// Large-angle probe run before declaring convergence.
template <class Evaluator>
bool coarse_probe(Evaluator &ev, const std::vector<Move> &moves) {
    constexpr double kAngles[] = {std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8};
    bool improved = false;
    if constexpr (requires { ev.group_probe(); }) {
        improved = ev.group_probe();
    }
    for (const Move &m : moves) {
        for (double angle : kAngles) {
            for (double signed_angle : {angle, -angle}) {
                if (beats(ev.trial(m, signed_angle), ev.score())) {
                    ev.accept(m, signed_angle);
                    improved = true;
                }
            }
        }
    }
    return improved;
}

template <class Evaluator>
AscentOutcome ascend(Evaluator &ev, const std::vector<Move> &moves, const OptimizerConfig &cfg) {
    double step = cfg.step_init;
    const double floor = step_floor(cfg);
    int iterations = 0;
    // True when the start has converged; otherwise the step is reset.
    auto settle = [&] {
        if (!coarse_probe(ev, moves)) {
            return true;
        }
        step = cfg.step_init;
        return false;
    };
    while (iterations < cfg.max_iters) {
        ++iterations;
        const Score sweep_start = ev.score();
        bool improved = false;
        while (!improved) {
            for (const Move &m : moves) {
                const Score up = ev.trial(m, step);
                const Score down = ev.trial(m, -step);
                const bool up_wins = !beats(down, up);
                if (beats(up_wins ? up : down, ev.score())) {
                    ev.accept(m, up_wins ? step : -step);
                    improved = true;
                }
            }
            if (!improved) {
                step *= 0.5;
                if (step < floor) {
                    if (settle()) {
                        return {ev.score().value, iterations, true};
                    }
                    improved = true;
                }
            }
        }
        if (!progressed(ev.score(), sweep_start, cfg.rel_tol)) {
            step *= 0.5;
            if (step < floor && settle()) {
                return {ev.score().value, iterations, true};
            }
        }
    }
    return {ev.score().value, iterations, false};
}

// Generic objective over a product of factor unitaries (a single factor is
// the unrestricted case).
class GenericEvaluator {
   public:
    GenericEvaluator(const PvmObjective &objective, std::vector<ComplexMatrix> factors)
        : objective_(objective), factors_(std::move(factors)) {
        value_ = evaluate(factors_);
    }

    Score score() const {
        return {value_, 0.0};
    }

    Score trial(const Move &m, double angle) {
        scratch_ = factors_[m.factor];
        rotate_columns(scratch_, m, angle);
        std::swap(scratch_, factors_[m.factor]);
        const double v = evaluate(factors_);
        std::swap(scratch_, factors_[m.factor]);
        return {v, 0.0};
    }

    void accept(const Move &m, double angle) {
        rotate_columns(factors_[m.factor], m, angle);
        value_ = evaluate(factors_);
    }

    void polish() {
        for (ComplexMatrix &f : factors_) {
            f = nearest_unitary(f);
        }
        value_ = evaluate(factors_);
    }

    ComplexMatrix unitary() const {
        return combine(factors_);
    }

   private:
    static ComplexMatrix combine(const std::vector<ComplexMatrix> &factors) {
        ComplexMatrix u = factors.front();
        for (size_t f = 1; f < factors.size(); ++f) {
            u = tensor(u, factors[f]);
        }
        return u;
    }

    double evaluate(const std::vector<ComplexMatrix> &factors) const {
        return objective_(RankOnePvm::from_unitary_unchecked(combine(factors)));
    }

    const PvmObjective &objective_;
    std::vector<ComplexMatrix> factors_;
    ComplexMatrix scratch_;
    double value_ = 0.0;
};

Complex functional_input(DiagonalFunctional f, Complex z) {
    return f == DiagonalFunctional::Modulus ? z : Complex(0.0, z.imag());
}

// Keeps op * U so a two-column rotation updates the diagonal in O(d).
//
// sum_b |x_b| is bounded below by |sum_b x_b|, a basis-independent floor, and
// is locally constant wherever it sits on that floor (all x_b share a phase).
// There the tie-breaker sum_b |x_b|^2, maximal at the eigenbasis of a normal
// op, moves the search off the plateau.
//
// The same flatness occurs on any group of columns whose entries share a
// phase, which the tie-breaker does not see; group_probe handles those.
class DiagonalEvaluator {
   public:
    DiagonalEvaluator(const ComplexMatrix &op, DiagonalFunctional f, ComplexMatrix u)
        : op_(op), functional_(f), u_(std::move(u)) {
        const double floor = std::abs(functional_input(f, op.trace()));
        plateau_ = floor + 1e-12 * std::max(1.0, floor);
        refresh();
    }

    Score score() const {
        return make_score(abs_.sum(), sq_.sum());
    }

    Score trial(const Move &m, double angle) {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        Complex aj, ak, bj, bk;
        if (m.kind == MoveKind::Symmetric) {
            aj = c;
            ak = Complex(0.0, s);
            bj = Complex(0.0, s);
            bk = c;
        } else {
            aj = c;
            ak = -s;
            bj = s;
            bk = c;
        }
        col_j_ = aj * u_.col(m.j) + ak * u_.col(m.k);
        col_k_ = bj * u_.col(m.j) + bk * u_.col(m.k);
        op_col_j_ = aj * op_u_.col(m.j) + ak * op_u_.col(m.k);
        op_col_k_ = bj * op_u_.col(m.j) + bk * op_u_.col(m.k);
        const Complex zj = functional_input(functional_, col_j_.dot(op_col_j_));
        const Complex zk = functional_input(functional_, col_k_.dot(op_col_k_));
        return make_score(abs_.sum() - abs_(m.j) - abs_(m.k) + std::abs(zj) + std::abs(zk),
                          sq_.sum() - sq_(m.j) - sq_(m.k) + std::norm(zj) + std::norm(zk));
    }

    void accept(const Move &m, double angle) {
        rotate_columns(u_, m, angle);
        rotate_columns(op_u_, m, angle);
        update(m.j);
        update(m.k);
    }

    void polish() {
        u_ = nearest_unitary(u_);
        refresh();
    }

    // For each group S of columns whose entries share a phase phi, tries the
    // eigenbasis of the Hermitian part of exp(-i phi) times the compressed
    // block of S. That strictly improves whenever the block is indefinite.
    bool group_probe() {
        bool improved = false;
        const Eigen::Index d = u_.cols();
        const double tiny = 1e-12 * std::max(1.0, abs_.sum());
        std::vector<bool> done(static_cast<size_t>(d), false);
        for (Eigen::Index j = 0; j < d; ++j) {
            if (done[j] || abs_(j) <= tiny) {
                continue;
            }
            const Complex xj = functional_input(functional_, u_.col(j).dot(op_u_.col(j)));
            const Complex phase = std::conj(xj) / std::abs(xj);
            std::vector<Eigen::Index> group;
            for (Eigen::Index k = 0; k < d; ++k) {
                const Complex xk = functional_input(functional_, u_.col(k).dot(op_u_.col(k)));
                if (abs_(k) <= tiny || std::abs(std::arg(phase * xk)) <= 1e-6) {
                    group.push_back(k);
                    done[k] = abs_(k) > tiny;
                }
            }
            if (group.size() < 2) {
                continue;
            }
            const Eigen::Index g = static_cast<Eigen::Index>(group.size());
            ComplexMatrix cols(u_.rows(), g), op_cols(u_.rows(), g);
            for (Eigen::Index i = 0; i < g; ++i) {
                cols.col(i) = u_.col(group[i]);
                op_cols.col(i) = op_u_.col(group[i]);
            }
            ComplexMatrix block = cols.adjoint() * op_cols;
            if (functional_ == DiagonalFunctional::ImaginaryModulus) {
                block = (block - block.adjoint()).eval() / 2.0;
            }
            const ComplexMatrix rotated = phase * block;
            const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((rotated + rotated.adjoint()) / 2.0);
            if (es.eigenvalues()(0) >= 0.0) {
                continue;
            }
            const ComplexMatrix new_cols = cols * es.eigenvectors();
            const ComplexMatrix new_op_cols = op_cols * es.eigenvectors();
            double value = abs_.sum(), squares = sq_.sum();
            for (Eigen::Index i = 0; i < g; ++i) {
                const Complex z = functional_input(functional_, new_cols.col(i).dot(new_op_cols.col(i)));
                value += std::abs(z) - abs_(group[i]);
                squares += std::norm(z) - sq_(group[i]);
            }
            if (beats(make_score(value, squares), score())) {
                for (Eigen::Index i = 0; i < g; ++i) {
                    u_.col(group[i]) = new_cols.col(i);
                    op_u_.col(group[i]) = new_op_cols.col(i);
                    update(group[i]);
                }
                improved = true;
            }
        }
        return improved;
    }

    const ComplexMatrix &unitary() const {
        return u_;
    }

   private:
    Score make_score(double value, double squares) const {
        return {value, value <= plateau_ ? squares : 0.0};
    }

    void update(Eigen::Index b) {
        const Complex z = functional_input(functional_, u_.col(b).dot(op_u_.col(b)));
        abs_(b) = std::abs(z);
        sq_(b) = std::norm(z);
    }

    void refresh() {
        op_u_ = op_ * u_;
        abs_.resize(u_.cols());
        sq_.resize(u_.cols());
        for (Eigen::Index b = 0; b < u_.cols(); ++b) {
            update(b);
        }
    }

    const ComplexMatrix &op_;
    DiagonalFunctional functional_;
    ComplexMatrix u_;
    ComplexMatrix op_u_;
    RealVector abs_;
    RealVector sq_;
    double plateau_ = 0.0;
    ComplexVector col_j_, col_k_, op_col_j_, op_col_k_;
};

// Runs every start through `make_evaluator` + ascend and collects the winner.
template <class MakeEvaluator>
SupremumResult multistart(const std::vector<std::vector<ComplexMatrix>> &starts, const std::vector<Move> &moves,
                          const OptimizerConfig &cfg, MakeEvaluator make_evaluator) {
    SupremumResult result;
    result.per_restart_values.reserve(starts.size());
    std::vector<ComplexMatrix> finals;
    std::vector<AscentOutcome> outcomes;
    for (const auto &start : starts) {
        auto ev = make_evaluator(start);
        AscentOutcome outcome{ev.score().value, 1, true};
        if (!moves.empty()) {
            outcome = ascend(ev, moves, cfg);
        }
        ev.polish();
        result.per_restart_values.push_back(ev.score().value);
        finals.push_back(ev.unitary());
        outcomes.push_back(outcome);
    }
    const double best = *std::max_element(result.per_restart_values.begin(), result.per_restart_values.end());
    if (!std::isfinite(best)) {
        throw Error(ErrorCode::Internal, "objective produced a non-finite supremum");
    }
    for (size_t i = 0; i < starts.size(); ++i) {
        if (result.per_restart_values[i] >= best - 1e-12) {
            result.value = result.per_restart_values[i];
            result.best_basis = RankOnePvm::from_unitary_unchecked(finals[i]);
            result.converged = outcomes[i].converged;
            result.iterations_used = outcomes[i].iterations;
            result.best_start = static_cast<int>(i);
            break;
        }
    }
    return result;
}

std::vector<std::vector<ComplexMatrix>> single_factor_starts(int d, const OptimizerConfig &cfg,
                                                             std::span<const ComplexMatrix> extra_starts) {
    std::vector<std::vector<ComplexMatrix>> starts;
    if (cfg.include_structured_starts) {
        starts.push_back({ComplexMatrix::Identity(d, d)});
        starts.push_back({fourier_matrix(d)});
    }
    for (const ComplexMatrix &s : extra_starts) {
        require_same_dim(d, static_cast<int>(s.rows()), "optimizer start");
        starts.push_back({nearest_unitary(s)});
    }
    for (int k = 0; k < cfg.n_restarts; ++k) {
        starts.push_back({haar_random_unitary(d, derive_seed(cfg.seed, static_cast<std::uint64_t>(k)))});
    }
    return starts;
}

}  // namespace

SupremumResult sup_over_pvm(const PvmObjective &objective, int d, const OptimizerConfig &cfg,
                            std::span<const ComplexMatrix> extra_starts) {
    cfg.validate();
    if (d < 1) {
        throw Error(ErrorCode::BadConfig, "dimension must be positive");
    }
    const int dims[] = {d};
    return multistart(single_factor_starts(d, cfg, extra_starts), moves_for(dims), cfg,
                      [&](const std::vector<ComplexMatrix> &start) { return GenericEvaluator(objective, start); });
}

SupremumResult sup_diagonal_functional(const ComplexMatrix &op, DiagonalFunctional functional,
                                       const OptimizerConfig &cfg, std::span<const ComplexMatrix> extra_starts) {
    cfg.validate();
    require_square(op, "objective operator");
    const int d = static_cast<int>(op.rows());
    const int dims[] = {d};
    return multistart(single_factor_starts(d, cfg, extra_starts), moves_for(dims), cfg,
                      [&](const std::vector<ComplexMatrix> &start) {
                          return DiagonalEvaluator(op, functional, start.front());
                      });
}

double evaluate_diagonal_functional(const ComplexMatrix &op, DiagonalFunctional functional,
                                    const ComplexMatrix &basis) {
    const ComplexMatrix op_u = op * basis;
    double total = 0.0;
    for (Eigen::Index b = 0; b < basis.cols(); ++b) {
        total += std::abs(functional_input(functional, basis.col(b).dot(op_u.col(b))));
    }
    return total;
}

SupremumResult sup_over_product_pvm(const PvmObjective &objective, std::span<const int> dims,
                                    const OptimizerConfig &cfg) {
    cfg.validate();
    if (dims.empty() || std::any_of(dims.begin(), dims.end(), [](int d) { return d < 1; })) {
        throw Error(ErrorCode::DimMismatch, "product dimensions must be a non-empty list of positive integers");
    }
    std::vector<std::vector<ComplexMatrix>> starts;
    if (cfg.include_structured_starts) {
        std::vector<ComplexMatrix> identity, fourier;
        for (int d : dims) {
            identity.push_back(ComplexMatrix::Identity(d, d));
            fourier.push_back(fourier_matrix(d));
        }
        starts.push_back(std::move(identity));
        starts.push_back(std::move(fourier));
    }
    for (int k = 0; k < cfg.n_restarts; ++k) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        std::vector<ComplexMatrix> factors;
        for (int d : dims) {
            factors.push_back(haar_random_unitary(d, rng));
        }
        starts.push_back(std::move(factors));
    }
    return multistart(starts, moves_for(dims), cfg,
                      [&](const std::vector<ComplexMatrix> &start) { return GenericEvaluator(objective, start); });
}

ComplexMatrix qubit_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e = std::polar(1.0, phi);
    ComplexMatrix u(2, 2);
    u(0, 0) = c;
    u(1, 0) = e * s;
    u(0, 1) = -std::conj(e) * s;
    u(1, 1) = c;
    return u;
}

namespace {

template <class F>
std::pair<double, double> golden_section_max(F &&f, double lo, double hi) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

double brute_force_sup_qubit(const PvmObjective &objective, int grid_density) {
    if (grid_density < 1) {
        throw Error(ErrorCode::BadConfig, "grid_density must be positive");
    }
    auto eval = [&](double theta, double phi) {
        return objective(RankOnePvm::from_unitary_unchecked(qubit_basis(theta, phi)));
    };
    const double pi = std::numbers::pi;
    const double cell = pi / grid_density;
    double best = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    double best_phi = 0.0;
    for (int i = 0; i < grid_density; ++i) {
        for (int j = 0; j < 2 * grid_density; ++j) {
            const double theta = cell * i;
            const double phi = cell * j;
            const double v = eval(theta, phi);
            if (v > best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }
    double theta = best_theta;
    double phi = best_phi;
    double refined = best;
    for (int round = 0; round < 6; ++round) {
        auto [t, vt] = golden_section_max([&](double x) { return eval(x, phi); }, theta - cell, theta + cell);
        if (vt > refined) {
            theta = t;
            refined = vt;
        }
        auto [p, vp] = golden_section_max([&](double x) { return eval(theta, x); }, phi - cell, phi + cell);
        if (vp > refined) {
            phi = p;
            refined = vp;
        }
    }
    return std::max(best, refined);
}

}  // namespace kduncert
