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

// Digit sets K ⊂ N with an explicit enumeration k_1 < k_2 < ..., and iid
// digit laws restricted to them.
//
// A restricted law is built one of two ways:
//   * a table law whose values all lie in K (mass outside K is rejected);
//   * an index law on {1, 2, ...} pushed through the enumeration: a = k_J.
//     For K = multiples of d and an index law with pmf ~ j^{-s}, the digit
//     pmf is ~ n^{-s} on K.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cflab/measures/digit_law.hpp"

namespace cflab {

class DigitSet {
 public:
  enum class Kind { kAll, kEven, kOdd, kMultiples, kAtLeast, kFinite };

  static DigitSet all() { return DigitSet(Kind::kAll, 1); }
  static DigitSet even() { return DigitSet(Kind::kEven, 2); }
  static DigitSet odd() { return DigitSet(Kind::kOdd, 2); }
  static DigitSet multiples(unsigned long d);
  static DigitSet at_least(unsigned long m);
  static DigitSet finite(std::vector<BigInt> elements);

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ != Kind::kFinite; }
  bool contains(const BigInt& n) const;
  // k_j, j >= 1.
  BigInt element(const BigInt& j) const;
  // #{k in K : k < n}.
  BigInt count_below(const BigInt& n) const;
  std::size_t finite_size() const { return elements_.size(); }

  nlohmann::json to_json() const;
  static DigitSet parse(const nlohmann::json& j);

 private:
  DigitSet(Kind kind, unsigned long param) : kind_(kind), param_(param) {}
  Kind kind_;
  unsigned long param_;
  std::vector<BigInt> elements_;
};

// Throws InvalidArgument when K is finite and allow_finite is false, or when a
// table law puts mass outside K.
DigitLawPtr make_restricted_law(const DigitSet& set, DigitLawPtr law, bool allow_finite = false);

}  // namespace cflab
