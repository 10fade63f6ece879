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

// Exact continued-fraction digits of a Lebesgue-uniform point.
//
// The point is x = (m + y)/2^k with y in [0,1) unrevealed.  The source keeps
// the current tail as a homography t = (A y + B)/(C y + D) and emits digit d
// only once both endpoints y = 0 and y = 1 give floor(1/t) = d, i.e. once the
// enclosure of the tail lies inside one cylinder.  Revealing a word w maps
// y -> (w + y')/2^64; emitting d maps t -> 1/t - d.

#pragma once

#include <cstdint>

#include "cflab/cf/digit_stream.hpp"
#include "cflab/measures/rng.hpp"

namespace cflab {

// Per-digit refinement cap; beyond it the point sits on a cylinder boundary
// to within 2^-4096 and extraction fails loudly.
inline constexpr std::size_t kMaxBitsPerDigit = 4096;

class LebesgueSource final : public DigitSource {
 public:
  explicit LebesgueSource(std::uint64_t seed);

  bool next(DigitEntry& out) override;
  std::string name() const override { return "lebesgue"; }

  // Enclosure [m/2^k, (m+1)/2^k] of the sampled point.
  RationalInterval enclosure() const;
  std::size_t bits_consumed() const { return k_; }

 private:
  void reveal();

  BitSource bits_;
  BigInt a_{1}, b_{0}, c_{0}, d_{1};
  BigInt m_{0};
  std::size_t k_ = 0;
  // Scratch.
  BigInt q0_, r0_, q1_, r1_, n1_, d1_;
};

DigitStream lebesgue_digits(std::uint64_t seed);

}  // namespace cflab
