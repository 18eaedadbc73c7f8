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

#include "io.hpp"

#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "kduncert/errors.hpp"

namespace kduncert::io {

namespace {

[[noreturn]] void parse_fail(const std::string &field, const std::string &what) {
    throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

const json &require(const json &j, const std::string &key, const std::string &field) {
    if (!j.is_object()) {
        parse_fail(field, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        parse_fail(field.empty() ? key : field + "." + key, "missing");
    }
    return *it;
}

std::string join(const std::string &parent, const std::string &child) {
    return parent.empty() ? child : parent + "." + child;
}

int read_dim(const json &j, const std::string &field) {
    const json &d = require(j, "d", field);
    if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 64) {
        parse_fail(join(field, "d"), "expected an integer in [1, 64]");
    }
    return d.get<int>();
}

Complex complex_from_json(const json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_fail(field, "expected a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexVector vector_from_json(const json &j, int d, const std::string &field) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) {
        parse_fail(field, "expected an array of " + std::to_string(d) + " [re, im] pairs");
    }
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) {
        v(i) = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
}

template <class T>
T with_field(const std::string &field, const std::function<T()> &body) {
    try {
        return body();
    } catch (const Error &e) {
        if (e.code() == ErrorCode::ParseError) {
            throw;
        }
        throw Error(e.code(), "in '" + field + "': " + e.message());
    }
}

bool looks_like_povm(const json &j) {
    return j.is_object() && j.contains("effects");
}

}  // namespace

json to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json matrix_to_json(const ComplexMatrix &m) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back(to_json(m(r, c)));
        }
    }
    return {{"d", m.rows()}, {"re_im", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json &j, const std::string &field) {
    const int d = read_dim(j, field);
    const json &entries = require(j, "re_im", field);
    const std::string entries_field = join(field, "re_im");
    if (!entries.is_array() || static_cast<int>(entries.size()) != d * d) {
        parse_fail(entries_field, "expected " + std::to_string(d * d) + " [re, im] pairs");
    }
    ComplexMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const int idx = r * d + c;
            m(r, c) = complex_from_json(entries[idx], entries_field + "[" + std::to_string(idx) + "]");
        }
    }
    return m;
}

json to_json(const DensityMatrix &state) {
    return matrix_to_json(state.matrix());
}

DensityMatrix state_from_json(const json &j) {
    if (j.is_object() && j.contains("vector")) {
        const int d = read_dim(j, "");
        const ComplexVector psi = vector_from_json(j["vector"], d, "vector");
        if (psi.norm() < 1e-12) {
            throw Error(ErrorCode::NotUnitTrace, "in 'vector': state vector has zero norm");
        }
        return pure_state(psi);
    }
    const ComplexMatrix m = matrix_from_json(j, "");
    return with_field<DensityMatrix>("state", [&] { return validate_density(m); });
}

json to_json(const Povm &povm) {
    json effects = json::array();
    for (const ComplexMatrix &m : povm.effects()) {
        effects.push_back(matrix_to_json(m));
    }
    return {{"d", povm.dim()}, {"effects", std::move(effects)}, {"labels", povm.labels()}};
}

Povm povm_from_json(const json &j) {
    const int d = read_dim(j, "");
    const json &effects = require(j, "effects", "");
    if (!effects.is_array() || effects.empty()) {
        parse_fail("effects", "expected a non-empty array of matrices");
    }
    std::vector<ComplexMatrix> ms;
    for (size_t i = 0; i < effects.size(); ++i) {
        const std::string field = "effects[" + std::to_string(i) + "]";
        ComplexMatrix m = matrix_from_json(effects[i], field);
        if (m.rows() != d) {
            throw Error(ErrorCode::DimMismatch, "in '" + field + "': effect dimension " + std::to_string(m.rows()) +
                                                    " differs from d = " + std::to_string(d));
        }
        ms.push_back(std::move(m));
    }
    std::vector<std::string> labels;
    if (auto it = j.find("labels"); it != j.end()) {
        if (!it->is_array() || it->size() != ms.size()) {
            parse_fail("labels", "expected one string per effect");
        }
        for (size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) {
                parse_fail("labels[" + std::to_string(i) + "]", "expected a string");
            }
            labels.push_back((*it)[i].get<std::string>());
        }
    }
    return with_field<Povm>("effects", [&] { return validate_povm(std::move(ms), std::move(labels)); });
}

Povm measurement_from_json(const json &j) {
    if (looks_like_povm(j)) {
        return povm_from_json(j);
    }
    return basis_from_json(j).as_povm();
}

json to_json(const RankOnePvm &pvm) {
    return matrix_to_json(pvm.basis_unitary());
}

RankOnePvm basis_from_json(const json &j) {
    if (looks_like_povm(j)) {
        const Povm povm = povm_from_json(j);
        return with_field<RankOnePvm>("effects", [&] { return rank_one_pvm_from_povm(povm); });
    }
    const ComplexMatrix u = matrix_from_json(j, "");
    return with_field<RankOnePvm>("basis", [&] { return validate_rank_one_pvm(u); });
}

json to_json(const OptimizerConfig &cfg) {
    return {{"n_restarts", cfg.n_restarts},
            {"max_iters", cfg.max_iters},
            {"rel_tol", cfg.rel_tol},
            {"step_init", cfg.step_init},
            {"seed", cfg.seed},
            {"include_structured_starts", cfg.include_structured_starts}};
}

OptimizerConfig optimizer_config_from_json(const json &j) {
    if (!j.is_object()) {
        parse_fail("optimizer", "expected an object");
    }
    OptimizerConfig cfg;
    auto read = [&](const char *key, auto &slot) {
        auto it = j.find(key);
        if (it == j.end()) {
            return;
        }
        using T = std::decay_t<decltype(slot)>;
        if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) {
                parse_fail(key, "expected a boolean");
            }
        } else if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) {
                parse_fail(key, "expected an integer");
            }
        } else if (!it->is_number()) {
            parse_fail(key, "expected a number");
        }
        slot = it->get<T>();
    };
    read("n_restarts", cfg.n_restarts);
    read("max_iters", cfg.max_iters);
    read("rel_tol", cfg.rel_tol);
    read("step_init", cfg.step_init);
    read("seed", cfg.seed);
    read("include_structured_starts", cfg.include_structured_starts);
    cfg.validate();
    return cfg;
}

json to_json(const KdTable &t) {
    json values = json::array();
    for (int a = 0; a < t.n_a(); ++a) {
        for (int b = 0; b < t.n_b(); ++b) {
            values.push_back(to_json(t(a, b)));
        }
    }
    return {{"n_a", t.n_a()}, {"n_b", t.n_b()}, {"values", std::move(values)}};
}

json to_json(const SupremumResult &r) {
    return {{"value", r.value},
            {"best_basis", to_json(r.best_basis)},
            {"per_restart_values", r.per_restart_values},
            {"converged", r.converged},
            {"iterations_used", r.iterations_used},
            {"best_start", r.best_start}};
}

json to_json(const EffectwiseSupremum &r) {
    json per_effect = json::array();
    for (const SupremumResult &s : r.per_effect) {
        per_effect.push_back(to_json(s));
    }
    return {{"value", r.value},
            {"converged", r.converged},
            {"iterations_used", r.iterations_used},
            {"per_effect", std::move(per_effect)}};
}

json to_json(const Decomposition &d) {
    json j = {{"flavor", std::string(to_string(d.flavor))},
              {"total", d.total},
              {"quantum", d.quantum},
              {"classical", d.classical},
              {"probs", d.probs}};
    if (d.diagnostics) {
        j["diagnostics"] = to_json(*d.diagnostics);
    }
    return j;
}

json to_json(const WitnessReport &r) {
    json witness = nullptr;
    if (r.witness) {
        witness = {{"a", r.witness->a},
                   {"b", r.witness->b},
                   {"weak_value", to_json(r.witness->weak_value)},
                   {"basis", to_json(r.witness->basis)}};
    }
    return {{"contextual", r.contextual},
            {"nre", r.nre},
            {"ncl", r.ncl},
            {"threshold", r.threshold},
            {"inconsistent", r.inconsistent},
            {"ncl_converged", r.ncl_converged},
            {"witness", std::move(witness)}};
}

json parse_json(std::string_view text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, source + ": malformed JSON (" + e.what() + ")");
    }
}

json read_json(const std::string &path, std::istream &stdin_stream) {
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(stdin_stream)), std::istreambuf_iterator<char>());
        return parse_json(text, "<stdin>");
    }
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

}  // namespace kduncert::io
