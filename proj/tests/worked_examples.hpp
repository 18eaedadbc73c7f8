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


// Library-side values for the frozen worked examples in
// fixtures/worked_examples.json.

#ifndef KDUNCERT_TESTS_WORKED_EXAMPLES_HPP
#define KDUNCERT_TESTS_WORKED_EXAMPLES_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace worked {

struct Check {
    std::string name;
    double deviation;
    double tolerance;
    bool passed;
    std::string detail;
};

nlohmann::json load_fixtures();

// Recompute every fixture entry with the library; one Check per entry.
// Entries without a library counterpart come back failed.
std::vector<Check> run_checks(const nlohmann::json &fixtures);

}  // namespace worked

#endif
