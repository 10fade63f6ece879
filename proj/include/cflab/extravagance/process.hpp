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

// Replicated extravagance estimates for a sampler spec.  Replica r runs with
// seed derive_seed(seed, r); summaries use interval midpoints.

#pragma once

#include <cstdint>
#include <vector>

#include "cflab/extravagance/trace.hpp"
#include "cflab/measures/sampler_spec.hpp"
#include "json.hpp"

namespace cflab {

struct Quantiles {
  double min = 0, q10 = 0, q25 = 0, median = 0, q75 = 0, q90 = 0, max = 0;

  // Linear interpolation between order statistics.  Requires a non-empty sample.
  static Quantiles of(std::vector<double> sample);
  nlohmann::json to_json() const;
};

struct ReplicaTrace {
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  ExtravaganceTrace trace;
  nlohmann::json diagnostics;
};

struct TraceSummary {
  Quantiles running_sup;
  Quantiles tail_max;
  double max_sup_width = 0;
  double max_tail_width = 0;
  std::size_t empty_traces = 0;

  static TraceSummary of(const std::vector<ReplicaTrace>& replicas);
  nlohmann::json to_json() const;
};

struct ProcessExtravagance {
  nlohmann::json spec;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<ReplicaTrace> replicas;
  TraceSummary summary;

  // Number of replicas whose running sup midpoint exceeds `threshold`.
  std::size_t count_sup_above(double threshold) const;
  nlohmann::json to_json(bool include_series = false) const;
};

ProcessExtravagance process_extravagance(const SamplerSpec& spec, std::size_t horizon,
                                         std::size_t replicas, std::uint64_t seed,
                                         std::size_t jobs = 1, bool record = false);

struct PerturbationPair {
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  ExtravaganceTrace base;
  ExtravaganceTrace perturbed;

  double tail_difference() const { return perturbed.tail_estimate() - base.tail_estimate(); }
  double sup_difference() const { return perturbed.estimate() - base.estimate(); }
};

struct PerturbationReport {
  nlohmann::json spec;
  nlohmann::json f_spec;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<PerturbationPair> pairs;
  Quantiles base_tail, perturbed_tail, tail_difference;
  Quantiles base_sup, perturbed_sup;

  nlohmann::json to_json(bool include_series = false) const;
};

// Phi realized with the replica seed s, f with derive_seed(s, kPerturbation);
// the base trace replays the same Phi.  Rejects an f_spec whose mean is known
// to be infinite; finiteness is otherwise taken as declared.
PerturbationReport perturbation_check(const SamplerSpec& spec, const SamplerSpec& f_spec,
                                      std::size_t horizon, std::size_t replicas,
                                      std::uint64_t seed, std::size_t jobs = 1,
                                      bool record = false);

}  // namespace cflab
