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

// Cylinders [a_1, ..., a_n]: the points of (0,1) whose expansion starts with
// the given word.  The cylinder is the interval between p_n/q_n and
// (p_n + p_{n-1})/(q_n + q_{n-1}).

#pragma once

#include <vector>

#include "cflab/numeric.hpp"

namespace cflab {

struct CylinderId {
  std::vector<BigInt> prefix;

  // Throws InvalidArgument for an empty prefix or a digit < 1.
  void validate() const;
  // The word A followed by B, i.e. the cylinder A ∩ G^{-|A|} B.
  CylinderId concat(const CylinderId& other) const;
  std::string to_string() const;
};

RationalInterval cylinder_interval(const CylinderId& id);
// Lebesgue length 1/(q_n (q_n + q_{n-1})).
Rational cylinder_length(const CylinderId& id);

// sup and inf over [0,1] of |(inverse branch)'| = 1/(q_n + q_{n-1} x)^2,
// divided by the cylinder length.
struct DistortionRatio {
  Rational sup_ratio;   // (q_n + q_{n-1}) / q_n
  Rational inf_ratio;   // q_n / (q_n + q_{n-1})
  // Both ratios certified to lie in [e^{-4}, e^4].
  bool within_bound = false;
};

DistortionRatio distortion_ratio(const CylinderId& id);

// Every word of length 1..max_len over the digits 1..max_digit, in
// lexicographic order by length.
std::vector<CylinderId> enumerate_cylinders(std::size_t max_len, unsigned long max_digit);

}  // namespace cflab
