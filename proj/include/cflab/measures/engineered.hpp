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

// Deterministic stream a_1 = 2, a_{n+1} = ceil((a_1 ... a_n)^r), r = u/v > 0.
//
// While P_n^u stays under the bit cap the digit is computed exactly as the
// ceiling of an integer v-th root.  Past the cap only logarithms are kept:
// with L_n = sum log a_k, log a_{n+1} lies in [r L_n, r L_n + e^{-r L_n}].

#pragma once

#include "cflab/cf/digit_stream.hpp"

namespace cflab {

inline constexpr std::size_t kEngineeredBitCap = std::size_t{1} << 20;

class EngineeredSource final : public DigitSource {
 public:
  explicit EngineeredSource(const Rational& r, std::size_t bit_cap = kEngineeredBitCap,
                            mpfr_prec_t prec = kDefaultPrecision);

  bool next(DigitEntry& out) override;
  std::string name() const override { return "engineered(r=" + to_string(r_) + ")"; }

 private:
  Rational r_;
  std::size_t bit_cap_;
  mpfr_prec_t prec_;
  std::size_t n_ = 0;
  bool exact_ = true;
  BigInt product_{1};
  RealInterval log_sum_;
};

DigitStream engineered_digits(const Rational& r, std::size_t bit_cap = kEngineeredBitCap);

}  // namespace cflab
