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

// Convergents p_n/q_n, Gauss-orbit tails G^n x and the enclosures built on
// them.  The convention is p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1 and
//   p_{n+1} = a_{n+1} p_n + p_{n-1},   q_{n+1} = a_{n+1} q_n + q_{n-1}.

#pragma once

#include <cstddef>
#include <vector>

#include "cflab/cf/digit_stream.hpp"
#include "cflab/numeric.hpp"

namespace cflab {

struct ConvergentState {
  BigInt p_prev{1};
  BigInt q_prev{0};
  BigInt p_cur{0};
  BigInt q_cur{1};
  std::size_t n = 0;

  static ConvergentState initial() { return {}; }
  // p_n q_{n-1} - p_{n-1} q_n, which is (-1)^{n+1}.
  BigInt determinant() const { return p_cur * q_prev - p_prev * q_cur; }
  Rational value() const { return Rational(p_cur, q_cur); }
};

// Throws InvalidArgument for a < 1.
ConvergentState advance_convergent(const ConvergentState& state, const BigInt& a);
void advance_in_place(ConvergentState& state, const BigInt& a);

// State after the first n digits.
ConvergentState convergent_at(DigitStream& digits, std::size_t n);

// Interval with endpoints p_n/q_n and p_{n+1}/q_{n+1}.  Needs n >= 1 and n + 1
// digits; throws StreamExhausted otherwise.
RationalInterval evaluate(DigitStream& digits, std::size_t n);

// Exact value of the finite fraction [0; a_1, ..., a_m].
Rational evaluate_finite(const std::vector<BigInt>& digits);

// Euclid's algorithm on x in (0,1).  The result never ends in a 1.
std::vector<BigInt> expand_rational(const Rational& x);

// Rewrites a trailing digit 1 into the shorter equivalent expansion.
std::vector<BigInt> canonicalize(std::vector<BigInt> digits);

// Enclosure of G^n x from depth-m convergents of the shifted stream
// (a_{n+1}, a_{n+2}, ...).  Needs m >= 1 and n + m + 1 digits.
RationalInterval gauss_tail(DigitStream& digits, std::size_t n, std::size_t m);

struct TailOptions {
  std::size_t extra = 32;        // digits read past the last requested tail
  std::size_t max_extra = 256;   // cap for adaptive refinement
  mpfr_prec_t precision = kDefaultPrecision;
};

// Enclosures of t_k = G^k x for k = 0..count-1 by one backward pass
// t_k = 1/(a_{k+1} + t_{k+1}) started from t in [0,1] at depth count + extra.
// Digits known only through their logarithm are handled from that enclosure.
std::vector<RealInterval> gauss_tails(DigitStream& digits, std::size_t count,
                                      const TailOptions& options = {});

// Enclosures of log(1/t_k) = log(1/G^k x), k = 0..count-1.
std::vector<RealInterval> log_inverse_tails(DigitStream& digits, std::size_t count,
                                            const TailOptions& options = {});

enum class Decision { kInside, kOutside, kUndecided };

struct ApproximationRatio {
  std::size_t n = 0;
  RationalInterval ratio;        // encloses |x - p_n/q_n| q_n^2 / G^n x
  Decision decision = Decision::kUndecided;
  std::size_t depth_used = 0;    // digits past n used by the final enclosure
};

// Decides |x - p_n/q_n| q_n^2 / G^n x in [1/2, 2] by doubling the enclosure
// depth from 8 up to options.max_extra.  Never throws on undecided input; the
// caller inspects `decision`.
ApproximationRatio approximation_ratio(DigitStream& digits, std::size_t n,
                                       const TailOptions& options = {});

// Encloses log q_n - sum_{k<n} log(1/G^k x) for n = 1..count.
std::vector<RealInterval> denominator_deviation(DigitStream& digits, std::size_t count,
                                                const TailOptions& options = {});

}  // namespace cflab
