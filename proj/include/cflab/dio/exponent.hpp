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

// Irrationality-exponent estimation along three routes over N digits:
//   tail route    x_k = log(1/G^{k-1} x), extravagance trace
//   digit route   x_k = log a_k, extravagance trace
//   direct route  E_n = -log|x - p_n/q_n| / log q_n, n = 1..N-1 with q_n > 1
// Each route yields two point estimates: `estimate` from the tail window
// n in [N/2, N) (2 + tail max, or the tail max of E_n) and `sup_estimate`
// from the whole prefix (2 + running sup, or the running max of E_n).
//
// E_n uses |x - p_n/q_n| = t_n / (q_n (q_n + q_{n-1} t_n)), t_n = G^n x, and
// is computed while the digits are exact integers.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cflab/cf/convergents.hpp"
#include "cflab/extravagance/process.hpp"
#include "cflab/extravagance/trace.hpp"
#include "cflab/measures/sampler_spec.hpp"
#include "json.hpp"

namespace cflab {

struct ExponentOptions {
  double tolerance = 0.1;  // agreement tolerance for the consistency flag
  TailOptions tails;
  bool record = true;
};

struct RoutePoint {
  double estimate = 0;
  double sup_estimate = 0;
  bool available = false;
};

struct ExponentEstimate {
  std::size_t horizon = 0;
  ExtravaganceTrace bugeaud_trace;
  ExtravaganceTrace digit_trace;
  // direct_n[i] encloses E_{direct_index[i]}.
  std::vector<std::size_t> direct_index;
  std::vector<RatioBound> direct;
  // False when an inexact digit stopped the direct route early.
  bool direct_complete = true;

  RoutePoint bugeaud;
  RoutePoint digit;
  RoutePoint direct_point;

  double tolerance = 0.1;
  bool consistent = false;
  // Steps where |M_tail - M_digit| exceeded (1 + n M_digit)/S_n.
  std::size_t route_violations = 0;
  std::size_t route_checked = 0;
  // Direct-route values below 2 - (log 2 + 1)/log q_n.
  std::size_t dirichlet_violations = 0;

  nlohmann::json to_json(bool include_series = false) const;
};

// Needs N >= 2 and a stream with at least N digits.  UndecidableAtCap and
// StreamExhausted propagate with the step in the message.
ExponentEstimate estimate_exponent(DigitStream& digits, std::size_t horizon,
                                   const ExponentOptions& options = {});

struct ExponentReplica {
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  ExponentEstimate estimate;
};

struct ExponentExperiment {
  nlohmann::json spec;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<ExponentReplica> replicas;
  // Over replicas, per route: tail-window estimates and sup estimates.
  Quantiles bugeaud, digit, direct;
  Quantiles bugeaud_sup, digit_sup, direct_sup;
  std::size_t consistent_replicas = 0;

  nlohmann::json to_json(bool include_series = false) const;
};

ExponentExperiment exponent_experiment(const SamplerSpec& spec, std::size_t horizon,
                                       std::size_t replicas, std::uint64_t seed,
                                       std::size_t jobs = 1,
                                       const ExponentOptions& options = {});

}  // namespace cflab
