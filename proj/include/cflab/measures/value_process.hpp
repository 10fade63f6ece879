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

// Non-negative value processes x_1, x_2, ... fed to the extravagance meter.
// A value is an exact integer, an exact rational or a real enclosure.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cflab/cf/digit_stream.hpp"
#include "cflab/numeric.hpp"
#include "json.hpp"

namespace cflab {

struct Value {
  enum class Kind { kInt, kRational, kReal };
  Kind kind = Kind::kInt;
  BigInt z;
  Rational q;
  std::optional<RealInterval> r;

  static Value integer(BigInt v);
  static Value rational(Rational v);
  static Value real(RealInterval v);

  RealInterval to_real(mpfr_prec_t prec = kDefaultPrecision) const;
  Rational to_rational() const;  // kInt / kRational only
  bool is_negative() const;
};

// a += b with kind promotion int -> rational -> real.
void accumulate(Value& a, const Value& b);

class ValueProcess {
 public:
  virtual ~ValueProcess() = default;
  virtual void next(Value& out) = 0;
  virtual std::string name() const = 0;
  // Process-specific counters reported alongside traces.
  virtual nlohmann::json diagnostics() const { return nlohmann::json::object(); }
};

using ValueProcessPtr = std::unique_ptr<ValueProcess>;

enum class Observable { kIdentity, kLog };

// x_n = a_n (identity) or x_n = log a_n (log) for the digits of `source`.
ValueProcessPtr digit_value_process(std::unique_ptr<DigitSource> source, Observable obs);
// x_n = c.
ValueProcessPtr constant_process(const Rational& c);
// x_n = rho^n.
ValueProcessPtr geometric_growth_process(const Rational& rho);
// x_n = sum of the children's x_n.
ValueProcessPtr sum_process(std::vector<ValueProcessPtr> terms);
// Replays a fixed list, then zeros.
ValueProcessPtr sequence_process(std::vector<Value> values);

}  // namespace cflab
