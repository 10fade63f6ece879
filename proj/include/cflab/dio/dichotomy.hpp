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

// Extravagance dichotomy for iid value processes.  A finite-mean case passes
// a replica when its tail-window max is below `finite_tail_threshold`; an
// infinite-mean case passes a replica when its running sup exceeds
// `infinite_sup_threshold`.  Both thresholds are conventions recorded in the
// report.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cflab/extravagance/process.hpp"
#include "cflab/measures/sampler_spec.hpp"
#include "json.hpp"

namespace cflab {

struct DichotomyCase {
  SamplerSpec spec;
  // Declared mean class; defaults to the spec's analytic class when known.
  std::optional<bool> mean_finite;
  std::size_t horizon = 0;  // 0 uses the experiment horizon
};

struct DichotomyOptions {
  double finite_tail_threshold = 0.02;
  double infinite_sup_threshold = 10.0;
};

struct DichotomyRow {
  nlohmann::json spec;
  bool mean_finite = true;
  std::string predicted;  // "0" or "infinity"
  ProcessExtravagance result;
  std::size_t passing = 0;  // replicas matching the predicted class
};

struct DichotomyReport {
  DichotomyOptions options;
  std::uint64_t seed = 0;
  std::vector<DichotomyRow> rows;

  nlohmann::json to_json() const;
};

// Case i runs with seed derive_seed(seed, i).  Throws ConfigError when a
// case has no declared class and the spec's class is unknown.
DichotomyReport dichotomy_experiment(const std::vector<DichotomyCase>& cases, std::size_t horizon,
                                     std::size_t replicas, std::uint64_t seed,
                                     std::size_t jobs = 1, const DichotomyOptions& options = {});

}  // namespace cflab
