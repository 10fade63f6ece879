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

// Approximation functions f(q) for Khinchin-type counting.
//
// Grammar (closed, no user-defined names):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'q' | 'n' | fn '(' expr ')' | '(' expr ')'
//   fn     := log | exp | sqrt
// Numbers are decimals or integers and are read exactly.  Evaluation is in
// MPFR interval arithmetic; a point where f is undefined (log of a
// non-positive value, division by an interval containing 0) throws
// InvalidArgument.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cflab/numeric.hpp"

namespace cflab {

struct MonotonicityCheck {
  bool non_increasing = true;  // q f(q) never certainly increases
  bool positive = true;        // f(q) certainly > 0 at every point
  std::size_t points = 0;
  // First offending q (as text) when a check failed.
  std::string offending;
  bool ok() const { return non_increasing && positive; }
};

class ApproxFunction {
 public:
  // Throws ConfigError on a syntax error.
  static ApproxFunction parse(const std::string& text);
  // 1/(q*log(q)^beta).
  static ApproxFunction log_family(const Rational& beta);

  RealInterval operator()(const RealInterval& q) const;
  RealInterval at(const BigInt& q, mpfr_prec_t prec = kDefaultPrecision) const;
  // q f(q).
  RealInterval scaled_at(const BigInt& q, mpfr_prec_t prec = kDefaultPrecision) const;

  const std::string& text() const { return text_; }
  // beta when the expression is the built-in family 1/(q*log(q)^beta); q f(q)
  // is then symbolically non-increasing for beta >= 0.
  const std::optional<Rational>& family_beta() const { return beta_; }
  // Smallest integer q >= 1 where f is defined and certainly positive.
  // Throws InvalidArgument if none exists below 64.
  std::size_t domain_start() const;

  // q f(q) checked at every integer in [domain_start, dense_limit] and at the
  // given extra points (any order).
  MonotonicityCheck check_monotone(std::size_t dense_limit,
                                   std::vector<BigInt> extra = {}) const;

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
  std::optional<Rational> beta_;
};

}  // namespace cflab
