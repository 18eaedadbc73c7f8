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

#ifndef KDUNCERT_TOOLS_IO_HPP
#define KDUNCERT_TOOLS_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "kduncert/kd.hpp"
#include "kduncert/uncertainty.hpp"
#include "kduncert/witness.hpp"

namespace kduncert::io {

using nlohmann::json;

// Wire formats. Complex numbers are always [re, im] pairs.
//   matrix: {"d": int, "re_im": [[re, im], ...]}   (row-major, d*d entries)
//   state:  a matrix, or {"d": int, "vector": [[re, im], ...]} for a pure state
//   POVM:   {"d": int, "effects": [matrix, ...], "labels": [string, ...]}
//   basis:  a unitary matrix (columns are the basis vectors) or a rank-1 POVM
// Every parse failure throws Error(ParseError) naming the offending field.

json to_json(Complex z);
json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j, const std::string &field);

json to_json(const DensityMatrix &state);
DensityMatrix state_from_json(const json &j);

json to_json(const Povm &povm);
Povm povm_from_json(const json &j);
/// A POVM file, or a unitary whose columns define a rank-1 PVM.
Povm measurement_from_json(const json &j);

json to_json(const RankOnePvm &pvm);
RankOnePvm basis_from_json(const json &j);

json to_json(const OptimizerConfig &cfg);
OptimizerConfig optimizer_config_from_json(const json &j);

json to_json(const KdTable &t);
json to_json(const SupremumResult &r);
json to_json(const EffectwiseSupremum &r);
json to_json(const Decomposition &d);
json to_json(const WitnessReport &r);

/// Reads a JSON document from `path`, or from `stdin_stream` when path is "-".
json read_json(const std::string &path, std::istream &stdin_stream);
json parse_json(std::string_view text, const std::string &source);

/// Two-space indented dump with a trailing newline. Doubles use the shortest
/// representation that round-trips exactly.
std::string dump(const json &j);

}  // namespace kduncert::io

#endif
