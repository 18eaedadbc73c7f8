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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"
#include "kduncert/errors.hpp"
#include "kduncert/random.hpp"
#include "selftest.hpp"

namespace kduncert::cli {

namespace {

using io::json;

struct OptimizerFlags {
    std::optional<int> restarts;
    std::optional<int> max_iters;
    std::optional<double> rel_tol;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App *cmd) {
        cmd->add_option("--restarts", restarts, "Haar-random optimizer restarts (default 32)");
        cmd->add_option("--max-iters", max_iters, "Iteration cap per restart (default 500)");
        cmd->add_option("--rel-tol", rel_tol, "Relative improvement tolerance (default 1e-8)");
        cmd->add_option("--seed", seed, "Random seed (default $KDUNCERT_SEED, else 0)");
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag) {
    if (flag) {
        return *flag;
    }
    const char *env = std::getenv("KDUNCERT_SEED");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    try {
        size_t used = 0;
        const std::string text(env);
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.front() == '-') {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw Error(ErrorCode::ParseError, std::string("KDUNCERT_SEED must be a non-negative integer, got '") + env +
                                               "'");
    }
}

OptimizerConfig resolve_config(const OptimizerFlags &flags) {
    OptimizerConfig cfg;
    if (flags.restarts) {
        cfg.n_restarts = *flags.restarts;
    }
    if (flags.max_iters) {
        cfg.max_iters = *flags.max_iters;
    }
    if (flags.rel_tol) {
        cfg.rel_tol = *flags.rel_tol;
    }
    cfg.seed = resolve_seed(flags.seed);
    cfg.validate();
    return cfg;
}

std::vector<int> parse_dims(const std::string &text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            dims.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw Error(ErrorCode::ParseError, "field 'dims': '" + item + "' is not an integer");
        }
    }
    return dims;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimMismatch:
            return kDimMismatch;
        case ErrorCode::WitnessNotFound:
        case ErrorCode::Internal:
            return kNotConverged;
        default:
            return kInvalidInput;
    }
}

}  // namespace

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Kirkwood-Dirac quantum/classical uncertainty toolkit", "kduncert"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output_path;
    app.add_option("-o,--output", output_path, "Write the result here instead of stdout");

    std::string state_path, povm_path, basis_path, second_path;
    std::string flavor_name = "NRe";
    double threshold = kDefaultWitnessThreshold;

    auto *kd = app.add_subcommand("kd-table", "KD table of a state for a POVM and a second measurement");
    kd->add_option("state", state_path, "State JSON (or - for stdin)")->required();
    kd->add_option("povm", povm_path, "First POVM JSON")->required();
    kd->add_option("basis", basis_path, "Second measurement: POVM or unitary JSON")->required();

    OptimizerFlags decompose_flags;
    auto *dec = app.add_subcommand("decompose", "Total, quantum and classical uncertainty");
    dec->add_option("state", state_path)->required();
    dec->add_option("povm", povm_path)->required();
    dec->add_option("--flavor", flavor_name, "NRe or NCl (default NRe)");
    decompose_flags.attach(dec);

    OptimizerFlags witness_flags;
    auto *wit = app.add_subcommand("witness", "Contextuality witness via strange weak values");
    wit->add_option("state", state_path)->required();
    wit->add_option("povm", povm_path)->required();
    wit->add_option("--threshold", threshold, "Decision threshold (default 1e-7)");
    witness_flags.attach(wit);

    auto *inf = app.add_subcommand("infimum", "Impurity: infimum of the total uncertainty over rank-1 POVMs");
    inf->add_option("state", state_path)->required();
    inf->add_option("--flavor", flavor_name, "NRe or NCl (default NRe)");

    OptimizerFlags bounds_flags;
    auto *bnd = app.add_subcommand("bounds", "Commutator lower bounds on the S-entropy uncertainty");
    bnd->add_option("state", state_path)->required();
    bnd->add_option("pvm", basis_path, "Rank-1 PVM (unitary or POVM JSON)")->required();
    bnd->add_option("pvm2", second_path, "Optional second rank-1 PVM for the relation bound");
    bounds_flags.attach(bnd);

    std::string kind;
    int dim = 2;
    std::optional<int> rank;
    int outcomes = 2;
    std::optional<std::uint64_t> random_seed;
    auto *rnd = app.add_subcommand("random", "Draw a random state, POVM or rank-1 PVM");
    rnd->add_option("kind", kind, "state, povm or pvm")->required()->check(CLI::IsMember({"state", "povm", "pvm"}));
    rnd->add_option("--dim", dim, "Hilbert-space dimension (default 2)");
    rnd->add_option("--rank", rank, "State rank (default full)");
    rnd->add_option("--outcomes", outcomes, "POVM outcome count (default 2)");
    rnd->add_option("--seed", random_seed, "Random seed (default $KDUNCERT_SEED, else 0)");

    std::string dims_text = "2,3,4";
    std::optional<int> samples;
    std::optional<std::uint64_t> selftest_seed;
    std::string inject;
    bool list = false;
    auto *st = app.add_subcommand("selftest", "Run the property suite");
    st->add_option("--dims", dims_text, "Comma-separated dimensions (default 2,3,4)");
    st->add_option("--samples", samples, "Instances per property (overrides every default count)");
    st->add_option("--seed", selftest_seed, "Random seed (default $KDUNCERT_SEED, else 0)");
    st->add_option("--inject-failure", inject, "Break the tolerance of the named property");
    st->add_flag("--list", list, "List property names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    json result;
    int status = kOk;
    try {
        if (*kd) {
            const DensityMatrix state = io::state_from_json(io::read_json(state_path, in));
            const Povm first = io::measurement_from_json(io::read_json(povm_path, in));
            const Povm second = io::measurement_from_json(io::read_json(basis_path, in));
            const KdTable table = kd_table(state, first, second);
            result = {{"kd_table", io::to_json(table)},
                      {"nonreality", table_nonreality(table)},
                      {"nonclassicality", table_nonclassicality(table)}};
        } else if (*dec) {
            const Flavor flavor = parse_flavor(flavor_name);
            const OptimizerConfig cfg = resolve_config(decompose_flags);
            const DensityMatrix state = io::state_from_json(io::read_json(state_path, in));
            const Povm povm = io::measurement_from_json(io::read_json(povm_path, in));
            const Decomposition d = decompose(state, povm, flavor, cfg);
            result = io::to_json(d);
            if (d.diagnostics && !d.diagnostics->converged) {
                err << "warning: nonclassicality optimizer did not converge\n";
                status = kNotConverged;
            }
        } else if (*wit) {
            const OptimizerConfig cfg = resolve_config(witness_flags);
            const DensityMatrix state = io::state_from_json(io::read_json(state_path, in));
            const Povm povm = io::measurement_from_json(io::read_json(povm_path, in));
            const WitnessReport r = contextuality_witness(state, povm, cfg, threshold);
            result = io::to_json(r);
            if (!r.ncl_converged) {
                err << "warning: nonclassicality optimizer did not converge\n";
                status = kNotConverged;
            }
            if (r.inconsistent) {
                err << "warning: nonreality and nonclassicality disagree about the threshold\n";
            }
        } else if (*inf) {
            const Flavor flavor = parse_flavor(flavor_name);
            const DensityMatrix state = io::state_from_json(io::read_json(state_path, in));
            const InfimumResult r = infimum_total(state, flavor);
            result = {{"flavor", std::string(to_string(flavor))},
                      {"value", r.value},
                      {"achieving_povm", io::to_json(r.achieving_povm)}};
        } else if (*bnd) {
            const OptimizerConfig cfg = resolve_config(bounds_flags);
            const DensityMatrix state = io::state_from_json(io::read_json(state_path, in));
            const RankOnePvm a = io::basis_from_json(io::read_json(basis_path, in));
            require_same_dim(state.dim(), a.dim(), "pvm");
            const double bound = bound_asymmetry(state, a, cfg);
            const double s_a = s_entropy(outcome_probs(state, a.as_povm()));
            result = {{"asymmetry_bound", bound}, {"s_entropy", s_a}, {"asymmetry_margin", s_a - bound}};
            bool holds = bound <= s_a + 1e-6;
            if (!second_path.empty()) {
                const RankOnePvm b = io::basis_from_json(io::read_json(second_path, in));
                require_same_dim(state.dim(), b.dim(), "pvm2");
                const double relation = uncertainty_relation_bound(state, a, b, cfg);
                const double sum = s_a + s_entropy(outcome_probs(state, b.as_povm()));
                result["relation_bound"] = relation;
                result["s_sum"] = sum;
                result["relation_margin"] = sum - relation;
                holds = holds && relation <= sum + 1e-6;
            }
            if (!holds) {
                throw Error(ErrorCode::Internal, "bound exceeds the entropy it bounds");
            }
        } else if (*rnd) {
            const std::uint64_t seed = resolve_seed(random_seed);
            if (kind == "state") {
                result = io::to_json(random_density(dim, rank.value_or(dim), seed));
            } else if (kind == "povm") {
                result = io::to_json(random_povm(dim, outcomes, seed));
            } else {
                Rng rng(seed);
                result = io::to_json(random_rank_one_pvm(dim, rng));
            }
        } else if (*st) {
            if (list) {
                for (const std::string &name : selftest::property_names()) {
                    out << name << "\n";
                }
                return kOk;
            }
            selftest::Options options;
            options.dims = parse_dims(dims_text);
            options.samples = samples;
            options.seed = resolve_seed(selftest_seed);
            options.inject_failure = inject;
            const selftest::Report report = selftest::run_all(options);
            err << selftest::summary(report);
            result = selftest::to_json(report);
            status = report.passed ? kOk : kSelftestFailed;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }

    const std::string text = io::dump(result);
    if (output_path.empty() || output_path == "-") {
        out << text;
    } else {
        std::ofstream file(output_path);
        if (!(file << text)) {
            err << "error: cannot write " << output_path << "\n";
            return kInvalidInput;
        }
    }
    return status;
}

}  // namespace kduncert::cli
