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

#ifndef KDUNCERT_TOOLS_SELFTEST_HPP
#define KDUNCERT_TOOLS_SELFTEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kduncert/optimize.hpp"

namespace kduncert::selftest {

struct Options {
    /// Dimensions cycled through by properties that do not fix their own.
    std::vector<int> dims{2, 3, 4};
    /// Overrides every property's default instance count.
    std::optional<int> samples;
    std::uint64_t seed = 0;
    /// Property whose tolerance is replaced by a negative one, so it must fail.
    std::string inject_failure;
    /// Optimizer settings; `seed` is overwritten by Options::seed.
    OptimizerConfig optimizer;
};

struct PropertyResult {
    std::string name;
    std::string module;
    int instances = 0;
    /// Largest observed violation measure; the property passes iff worst <= tolerance.
    double worst = 0.0;
    double tolerance = 0.0;
    int worst_instance = -1;
    bool passed = false;
    double seconds = 0.0;
};

struct Report {
    std::vector<PropertyResult> properties;
    bool passed = true;
    double seconds = 0.0;
};

const std::vector<std::string> &property_names();

/// Runs one property. `instances` overrides both the default count and
/// Options::samples. Throws BadConfig for an unknown name.
PropertyResult run_property(std::string_view name, const Options &options, std::optional<int> instances = {});

Report run_all(const Options &options);

/// Machine-readable report without timings, so equal seeds give equal bytes.
nlohmann::json to_json(const Report &report);
/// One line per property plus a totals line.
std::string summary(const Report &report);

}  // namespace kduncert::selftest

#endif
