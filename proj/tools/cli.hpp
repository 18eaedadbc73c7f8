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

#ifndef KDUNCERT_TOOLS_CLI_HPP
#define KDUNCERT_TOOLS_CLI_HPP

#include <iosfwd>

namespace kduncert::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kSelftestFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kDimMismatch = 3;
inline constexpr int kNotConverged = 4;

/// Runs the command line `argv[0..argc)`. Results go to `out` unless -o is
/// given; diagnostics go to `err`. Inputs named "-" are read from `in`.
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace kduncert::cli

#endif
