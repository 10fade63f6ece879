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

// Experiment configuration.  The on-disk form is a JSON object; every key
// is optional except "experiment" and unknown keys are rejected.
//
//   experiment   expand | exponent | extravagance | khinchin | renyi-check |
//                dichotomy | condensation
//   sampler      sampler spec (object or shorthand string)
//   horizon, replicas, seed, jobs
//   out, format  output directory ("" = stdout) and csv | json
//   series       include per-step traces in reports
//   gnuplot      write a companion gnuplot script next to CSV traces
//   tolerance    exponent route agreement tolerance
//   rational     expand: x in (0,1) as "p/q"
//   f, divisor, declared_convergent, q_min          khinchin
//   perturbation                                   extravagance: f_spec
//   max_prefix_len, max_digit, max_future_len, law renyi-check
//   law, s_values                                  condensation
//   cases, finite_tail_threshold, infinite_sup_threshold   dichotomy
//
// The config hash is the SHA-256 of the canonical JSON without jobs, out and
// gnuplot, so the parallelism level and output location never change names.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cflab/dio/khinchin.hpp"
#include "cflab/measures/sampler_spec.hpp"
#include "json.hpp"

namespace cflab {

struct CaseConfig {
  SamplerSpec spec;
  std::optional<bool> mean_finite;
  std::size_t horizon = 0;
};

struct ExperimentConfig {
  std::string experiment;
  std::optional<SamplerSpec> sampler;
  std::size_t horizon = 1000;
  std::size_t replicas = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;
  std::string format = "csv";
  bool series = false;
  bool gnuplot = false;
  double tolerance = 0.1;

  std::optional<Rational> rational;

  std::optional<std::string> f;
  Divisor divisor;
  std::optional<bool> declared_convergent;
  std::size_t q_min = 2;

  std::optional<SamplerSpec> perturbation;

  std::size_t max_prefix_len = 3;
  unsigned long max_digit = 5;
  std::size_t max_future_len = 0;
  std::optional<nlohmann::json> law;

  std::vector<Rational> s_values{Rational(1, 2), Rational(1), Rational(2)};

  std::vector<CaseConfig> cases;
  double finite_tail_threshold = 0.02;
  double infinite_sup_threshold = 10.0;

  // Throws ConfigError.  `default_seed` is used when "seed" is absent.
  static ExperimentConfig from_json(const nlohmann::json& j, std::uint64_t default_seed = 0);
  // Canonical form; from_json(to_json()) reproduces the config.
  nlohmann::json to_json() const;
  // 64 hex digits.
  std::string hash() const;
  // Semantic checks for the named experiment.  Throws ConfigError.
  void validate() const;
};

const std::vector<std::string>& experiment_kinds();

// Divisor from text: "1", "2*e^8", "e^8".
Divisor parse_divisor(const std::string& text);

// SHA-256 of bytes as 64 lowercase hex digits.
std::string sha256_hex(const std::string& bytes);

}  // namespace cflab
