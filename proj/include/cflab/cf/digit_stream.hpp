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

// Partial-quotient streams a_1, a_2, ... coding an irrational of (0,1).
//
// A stream is finite, deterministic (digit n is a function of n) or driven by
// a DigitSource.  Digits are memoized, so digit(n) replays the same value no
// matter how often or in what order it is requested.  Some sources produce
// digits too large to store (engineered and skyscraper streams beyond their
// bit cap); for those only an enclosure of log a_n is kept.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cflab/numeric.hpp"

namespace cflab {

using Digit = BigInt;

// One produced digit.  `log_value` is set, and `value` is 0, when the digit is
// known only through an enclosure of its natural logarithm.
struct DigitEntry {
  BigInt value;
  std::optional<RealInterval> log_value;
};

class DigitSource {
 public:
  virtual ~DigitSource() = default;
  // Produces the next digit.  Returns false once a finite source is exhausted.
  virtual bool next(DigitEntry& out) = 0;
  virtual std::string name() const = 0;
};

class DigitStream {
 public:
  static DigitStream finite(std::vector<BigInt> digits, std::string name = "finite");
  // Digit n (1-based) is gen(n).
  static DigitStream indexed(std::function<BigInt(std::size_t)> gen, std::string name);
  static DigitStream from_source(std::unique_ptr<DigitSource> source);

  DigitStream(DigitStream&&) noexcept = default;
  DigitStream& operator=(DigitStream&&) noexcept = default;
  DigitStream(const DigitStream&) = delete;
  DigitStream& operator=(const DigitStream&) = delete;

  // Digit n, 1-based.  Throws StreamExhausted, or Error when the digit is only
  // known through its logarithm.
  const BigInt& digit(std::size_t n);
  // Produces digits up to n; false if the stream ends first.
  bool has(std::size_t n);
  // True when digit n is stored exactly (produces it if needed).
  bool is_exact(std::size_t n);
  // Enclosure of log a_n.
  RealInterval log_digit(std::size_t n, mpfr_prec_t prec = kDefaultPrecision);
  // First n digits; all of them must be exact.
  std::vector<BigInt> prefix(std::size_t n);

  std::size_t produced_count() const { return values_.size(); }
  // Known length of a finite stream that has been read to its end.
  std::optional<std::size_t> known_length() const {
    return ended_ ? std::optional<std::size_t>(values_.size()) : std::nullopt;
  }
  const std::string& name() const { return name_; }

 private:
  DigitStream() = default;
  bool produce_until(std::size_t n);

  std::unique_ptr<DigitSource> source_;
  std::vector<BigInt> values_;
  std::vector<std::optional<RealInterval>> logs_;
  bool ended_ = false;
  std::string name_;
};

}  // namespace cflab
