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

#include "cflab/dio/dichotomy.hpp"

#include "cflab/error.hpp"
#include "cflab/measures/rng.hpp"

namespace cflab {

nlohmann::json DichotomyReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    rs.push_back({{"spec", r.spec},
                  {"mean_finite", r.mean_finite},
                  {"predicted", r.predicted},
                  {"passing", r.passing},
                  {"replicas", r.result.replicas.size()},
                  {"result", r.result.to_json()}});
  }
  return {{"seed", seed},
          {"finite_tail_threshold", options.finite_tail_threshold},
          {"infinite_sup_threshold", options.infinite_sup_threshold},
          {"rows", std::move(rs)}};
}

DichotomyReport dichotomy_experiment(const std::vector<DichotomyCase>& cases, std::size_t horizon,
                                     std::size_t replicas, std::uint64_t seed, std::size_t jobs,
                                     const DichotomyOptions& options) {
  DichotomyReport out;
  out.options = options;
  out.seed = seed;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const DichotomyCase& c = cases[i];
    const std::optional<bool> finite = c.mean_finite ? c.mean_finite : c.spec.mean_finite();
    if (!finite) {
      throw ConfigError("dichotomy: case " + std::to_string(i) +
                        " needs a declared mean class (mean_finite)");
    }
    DichotomyRow row;
    row.spec = c.spec.to_json();
    row.mean_finite = *finite;
    row.predicted = *finite ? "0" : "infinity";
    row.result = process_extravagance(c.spec, c.horizon ? c.horizon : horizon, replicas,
                                      derive_seed(seed, i), jobs);
    for (const auto& r : row.result.replicas) {
      const bool pass = *finite ? r.trace.tail_estimate() < options.finite_tail_threshold
                                : r.trace.estimate() > options.infinite_sup_threshold;
      if (pass) ++row.passing;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace cflab
