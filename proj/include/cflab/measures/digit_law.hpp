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

// Laws of a single positive-integer digit, sampled exactly by inverse CDF on
// a LazyUniform.  No law is truncated: the tail is resolved on demand.
//
// Families
//   table       finite support, exact rational weights (normalized)
//   power_tail  P(a >= n) = n^{-(s-1)},            s > 1   (pmf ~ (s-1) n^{-s})
//   log_tail    P(a >= n) = (log 2 / log n)^beta,  n >= 2  (beta = 1: pmf ~ 1/(n log^2 n))
//   geometric   a = 2^k with P(k) = 2^{-k}, k >= 1
//
// power_tail and log_tail draw a = floor(V(U)) with V(u) = u^{-1/(s-1)} and
// V(u) = 2^{u^{-1/beta}} respectively; V is decreasing, so P(a >= n) = P(U <= V^{-1}(n)).
// An exact floor(V(U)) of b bits needs about b bits of U, so these two laws
// return log-only entries above kInverseCdfExactBits, which keeps every draw
// inside the LazyUniform budget.  Other sources use kDigitBitCap.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cflab/cf/digit_stream.hpp"
#include "cflab/measures/lazy_uniform.hpp"
#include "cflab/numeric.hpp"
#include "json.hpp"

namespace cflab {

inline constexpr std::size_t kDigitBitCap = std::size_t{1} << 20;
inline constexpr std::size_t kInverseCdfExactBits = kMaxUniformBits - 512;

class DigitLaw {
 public:
  virtual ~DigitLaw() = default;

  virtual void sample(BitSource& bits, DigitEntry& out) const = 0;
  BigInt sample_exact(BitSource& bits) const;

  // Enclosure of P(a >= n), n >= 1.
  virtual RealInterval survival(const BigInt& n, mpfr_prec_t prec = kDefaultPrecision) const = 0;
  RealInterval pmf(const BigInt& n, mpfr_prec_t prec = kDefaultPrecision) const;
  // Exact P(a = n) for finite tables.
  virtual std::optional<Rational> exact_pmf(const BigInt&) const { return std::nullopt; }
  virtual std::optional<std::vector<BigInt>> finite_support() const { return std::nullopt; }

  virtual bool mean_finite() const = 0;
  virtual bool log_mean_finite() const = 0;
  virtual nlohmann::json to_json() const = 0;
  virtual std::string name() const = 0;
};

using DigitLawPtr = std::shared_ptr<const DigitLaw>;

// Weights need not be normalized; they must be positive.  Values distinct, >= 1.
DigitLawPtr make_table_law(std::vector<BigInt> values, std::vector<Rational> weights);
DigitLawPtr make_uniform_law(unsigned long min, unsigned long max);
DigitLawPtr make_power_tail_law(const Rational& s);
DigitLawPtr make_log_tail_law(const Rational& beta);
DigitLawPtr make_geometric_law();

// {"family": "table"|"uniform"|"power_tail"|"log_tail"|"geometric", ...}.
// Throws ConfigError.
DigitLawPtr parse_law(const nlohmann::json& j);

// Rationals in configs are strings ("5/2", "2.5") or JSON numbers.
Rational json_rational(const nlohmann::json& j, const std::string& what);

}  // namespace cflab
