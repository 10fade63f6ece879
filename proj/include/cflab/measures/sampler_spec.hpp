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

// Sampler specifications: a validated, canonical JSON description of a digit
// stream or value process, plus the factories that realize it for a seed.
//
// JSON kinds (all keys listed; unknown keys are rejected):
//   {"kind":"lebesgue"}
//   {"kind":"golden"}                                  all-ones stream
//   {"kind":"periodic","digits":[2,3]}
//   {"kind":"finite","digits":[3,7,15,1]}
//   {"kind":"iid_pmf","law":<law>}
//   {"kind":"restricted_iid","set":<set>,"law":<law>,"allow_finite":false}
//   {"kind":"engineered","r":"1/2"}
//   {"kind":"skyscraper","a":"2","base":<law>}       base defaults to power_tail(5/2)
//   {"kind":"constant","value":"1"}                    value process only
//   {"kind":"geometric_growth","rho":"2"}              value process only
//   {"kind":"sum","terms":[<spec>, ...]}               value process only
// Digit kinds accept "observable": "identity" | "log" (and "psi" for
// skyscraper, the default there), used when realized as a value process.
//
// Shorthands: lebesgue, golden, periodic:2,3, finite:3,7, uniform:1..10,
// power:3, logtail:1, geometric, engineered:1/2, skyscraper:2[:s],
// constant:1, growth:2.  A trailing "@log" selects the log observable.

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "cflab/cf/digit_stream.hpp"
#include "cflab/measures/digit_law.hpp"
#include "cflab/measures/digit_set.hpp"
#include "cflab/measures/value_process.hpp"
#include "json.hpp"

namespace cflab {

class SamplerSpec {
 public:
  // Object or shorthand string.  Throws ConfigError.
  static SamplerSpec parse(const nlohmann::json& j);
  static SamplerSpec parse_text(const std::string& text);

  const std::string& kind() const { return kind_; }
  // Canonical form: parse(to_json()) == *this.
  const nlohmann::json& to_json() const { return canonical_; }
  bool produces_digits() const;
  bool operator==(const SamplerSpec& o) const { return canonical_ == o.canonical_; }

  // Analytic mean class of the value process (E x_1 < inf), when known.
  std::optional<bool> mean_finite() const;

 private:
  std::string kind_;
  nlohmann::json canonical_;
};

// Samplers.
DigitStream iid_digits(DigitLawPtr law, std::uint64_t seed);
DigitStream restricted_digits(const DigitSet& set, DigitLawPtr law, std::uint64_t seed,
                              bool allow_finite = false);
std::unique_ptr<DigitSource> iid_source(DigitLawPtr law, std::uint64_t seed);

std::unique_ptr<DigitSource> make_digit_source(const SamplerSpec& spec, std::uint64_t seed);
DigitStream make_digit_stream(const SamplerSpec& spec, std::uint64_t seed);
// Throws ConfigError when the kind has no value-process realization.
ValueProcessPtr make_value_process(const SamplerSpec& spec, std::uint64_t seed);

}  // namespace cflab
