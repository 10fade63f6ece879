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

// A uniform point U of (0,1) revealed 64 bits at a time.  After k bits the
// point is known to lie in [m/2^k, (m+1)/2^k).

#pragma once

#include <cstdint>

#include "cflab/measures/rng.hpp"
#include "cflab/numeric.hpp"

namespace cflab {

inline constexpr std::size_t kMaxUniformBits = 4096;

class LazyUniform {
 public:
  explicit LazyUniform(BitSource& bits) : bits_(&bits) {}

  // Reveals 64 more bits.  Throws UndecidableAtCap past kMaxUniformBits.
  void refine();
  std::size_t bits() const { return k_; }
  const BigInt& numerator() const { return m_; }
  // First revealed word (refines once if nothing has been revealed).
  std::uint64_t leading_word();

  RationalInterval enclosure() const;
  RealInterval real(mpfr_prec_t prec) const;

  // P(U < c) decided exactly: true iff U < c.  Refines as needed.
  bool less_than(const Rational& c);

 private:
  BitSource* bits_;
  BigInt m_{0};
  std::size_t k_ = 0;
  std::uint64_t first_ = 0;
};

}  // namespace cflab
