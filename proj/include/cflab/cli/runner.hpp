// Copyright 2026 The cflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment dispatch and the process exit-code contract:
//   0 success, 2 configuration error, 3 undecidable at cap, 1 anything else.
// Errors are also written to the error stream as one JSON object per line:
//   {"error": "<class>", "message": "..."}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cflab/cli/config.hpp"
#include "cflab/cli/report.hpp"

namespace cflab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUndecidable = 3;

RunResult run_experiment(const ExperimentConfig& config);

// Runs and emits; maps exceptions to exit codes and writes diagnostics to err.
int run_and_emit(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Exit code for the exception currently being handled, with its diagnostic.
int report_current_exception(std::ostream& err);

}  // namespace cflab
