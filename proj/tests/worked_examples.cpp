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


#include "worked_examples.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include "kduncert/kd.hpp"
#include "kduncert/optimize.hpp"
#include "kduncert/quantumness.hpp"
#include "kduncert/uncertainty.hpp"
#include "kduncert/witness.hpp"
#include "support.hpp"

namespace worked {
namespace {

using namespace kduncert;
using namespace kdtest;
using nlohmann::json;

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json complex_list(const ComplexMatrix &m) {
    json out = json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            out.push_back(complex_json(m(a, b)));
        }
    }
    return out;
}

json real_list(const RealMatrix &m) {
    json out = json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            out.push_back(m(a, b));
        }
    }
    return out;
}

DensityMatrix half_x_state() {
    return state(ComplexMatrix::Identity(2, 2) / 2.0 + pauli_x() / 4.0);
}

DensityMatrix tilted_state() {
    const double t = std::numbers::pi / 8;
    return pure_state(ket({std::cos(t), std::polar(std::sin(t), std::numbers::pi / 5)}));
}

DensityMatrix diag31() {
    return state(diag({0.75, 0.25}));
}

double entropy_of(Flavor f, const DensityMatrix &s, const RankOnePvm &pvm) {
    return entropy(f, outcome_probs(s, pvm.as_povm()));
}

const std::map<std::string, std::function<json()>> &library_values() {
    static const std::map<std::string, std::function<json()>> table = [] {
        const OptimizerConfig cfg;
        std::map<std::string, std::function<json()>> m;
        m["kd_table.zero_x_y"] = [] { return complex_list(kd_table(zero_state(), x_basis().as_povm(), y_basis()).values()); };
        m["kd_table.zero_x_y.nonreality"] = [] {
            return json(table_nonreality(kd_table(zero_state(), x_basis().as_povm(), y_basis())));
        };
        m["kd_table.zero_x_y.nonclassicality"] = [] {
            return json(table_nonclassicality(kd_table(zero_state(), x_basis().as_povm(), y_basis())));
        };
        m["kd_table.identity_half_z_z"] = [] {
            return complex_list(kd_table(mixed_state(2), z_basis().as_povm(), z_basis().as_povm()).values());
        };
        m["johansen.plus_z_y.imaginary"] = [] { return real_list(johansen_components(plus_state(), z_basis(), y_basis()).imaginary); };
        m["johansen.plus_z_y.kd_imag"] = [] {
            return real_list(kd_table(plus_state(), z_basis().as_povm(), y_basis()).values().imag());
        };
        m["quantum_nonreality.plus_z"] = [] { return json(quantum_nonreality(plus_state(), z_basis().as_povm())); };
        m["quantum_nonreality.half_x_z"] = [] { return json(quantum_nonreality(half_x_state(), z_basis().as_povm())); };
        m["quantum_nonreality.plus_z.bloch_grid"] = [cfg] {
            return json(quantum_nonreality_variational(plus_state(), z_basis().as_povm(), cfg).value);
        };
        m["quantum_nonclassicality.plus_z"] = [cfg] {
            return json(quantum_nonclassicality(plus_state(), z_basis().as_povm(), cfg).value);
        };
        m["quantum_nonclassicality.zero_x"] = [cfg] {
            return json(quantum_nonclassicality(zero_state(), x_basis().as_povm(), cfg).value);
        };
        m["quantum_nonclassicality.tilted_pure_z.t_entropy"] = [] {
            return json(entropy_of(Flavor::NCl, tilted_state(), z_basis()));
        };
        m["quantum_nonclassicality.tilted_pure_z.bloch_grid"] = [cfg] {
            return json(quantum_nonclassicality(tilted_state(), z_basis().as_povm(), cfg).value);
        };
        m["trace_norm_sup.hermitian_2x2.trace_norm"] = [] { return json(trace_norm(mat2(1.0, 2.0 * kI, -2.0 * kI, -3.0))); };
        m["trace_norm_sup.hermitian_2x2.bloch_grid"] = [cfg] {
            return json(sup_diagonal_functional(mat2(1.0, 2.0 * kI, -2.0 * kI, -3.0), DiagonalFunctional::Modulus, cfg).value);
        };
        m["s_entropy.uniform4"] = [] { return json(s_entropy(std::vector<double>(4, 0.25))); };
        m["t_entropy.uniform4"] = [] { return json(t_entropy(std::vector<double>(4, 0.25))); };
        m["t_entropy.half_half"] = [] { return json(t_entropy(std::vector<double>{0.5, 0.5})); };
        m["decompose.diag31_z_nre.total"] = [cfg] { return json(decompose(diag31(), z_basis().as_povm(), Flavor::NRe, cfg).total); };
        m["decompose.diag31_z_nre.quantum"] = [cfg] {
            return json(decompose(diag31(), z_basis().as_povm(), Flavor::NRe, cfg).quantum);
        };
        m["decompose.half_x_z_nre.total"] = [cfg] {
            return json(decompose(half_x_state(), z_basis().as_povm(), Flavor::NRe, cfg).total);
        };
        m["decompose.half_x_z_nre.quantum"] = [cfg] {
            return json(decompose(half_x_state(), z_basis().as_povm(), Flavor::NRe, cfg).quantum);
        };
        m["impurity_s.diag31"] = [] { return json(impurity_s(diag31())); };
        m["impurity_t.diag31"] = [] { return json(impurity_t(diag31())); };
        m["impurity_s.mixed4"] = [] { return json(impurity_s(mixed_state(4))); };
        m["impurity_t.mixed4"] = [] { return json(impurity_t(mixed_state(4))); };
        m["bound_asymmetry.plus_z"] = [cfg] { return json(bound_asymmetry(plus_state(), z_basis(), cfg)); };
        m["bound_asymmetry.plus_z.s_entropy"] = [] { return json(entropy_of(Flavor::NRe, plus_state(), z_basis())); };
        m["relation_bound.yplus_z_x"] = [cfg] {
            return json(uncertainty_relation_bound(y_plus_state(), z_basis(), x_basis(), cfg));
        };
        m["relation_bound.yplus_z_x.s_sum"] = [] {
            return json(entropy_of(Flavor::NRe, y_plus_state(), z_basis()) + entropy_of(Flavor::NRe, y_plus_state(), x_basis()));
        };
        m["weak_value.zero_xplus_yplus"] = [] {
            return complex_json(weak_values(zero_state(), x_basis().as_povm(), y_basis()).values(0, 0));
        };
        m["quantum_via_weak_values.zero_x_y.nre"] = [] {
            return json(quantum_via_weak_values(zero_state(), x_basis().as_povm(), y_basis()).nre);
        };
        m["disturbance.plus_z"] = [] { return json(disturbance_nonreality(plus_state(), z_basis())); };
        return m;
    }();
    return table;
}

std::vector<double> flatten(const json &j) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
    } else {
        for (const json &e : j) {
            for (double x : flatten(e)) {
                out.push_back(x);
            }
        }
    }
    return out;
}

}  // namespace

json load_fixtures() {
    std::ifstream in(fixture("worked_examples.json"));
    return json::parse(in);
}

std::vector<Check> run_checks(const json &fixtures) {
    std::vector<Check> checks;
    for (const json &ex : fixtures.at("examples")) {
        Check c{ex.at("name").get<std::string>(), 0.0, ex.at("tolerance").get<double>(), false, ""};
        const auto it = library_values().find(c.name);
        if (it == library_values().end()) {
            c.deviation = INFINITY;
            c.detail = "no library counterpart";
            checks.push_back(c);
            continue;
        }
        try {
            const std::vector<double> expect = flatten(ex.at("value"));
            const std::vector<double> got = flatten(it->second());
            if (expect.size() != got.size()) {
                c.deviation = INFINITY;
                c.detail = "shape mismatch";
            } else {
                for (size_t i = 0; i < got.size(); ++i) {
                    c.deviation = std::max(c.deviation, std::abs(got[i] - expect[i]));
                }
            }
        } catch (const std::exception &e) {
            c.deviation = INFINITY;
            c.detail = e.what();
        }
        c.passed = c.deviation <= c.tolerance;
        checks.push_back(c);
    }
    return checks;
}

}  // namespace worked
