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

// Skyscraper (tower) process over an iid base.  Each base point carries a
// height phi ~ f; the orbit climbs levels 0..phi-1 and emits the tent value
// Psi = a^{min(level, phi - level)}, so one block reads
//   1, a, a^2, ..., a^{floor(phi/2)}, ..., a.
// The digit variant emits ceil(e^Psi) with log-digit in [Psi, Psi + e^{-Psi}].

#pragma once

#include <cstdint>
#include <vector>

#include "cflab/measures/digit_law.hpp"
#include "cflab/measures/value_process.hpp"

namespace cflab {

struct TowerState {
  BigInt base_value;   // phi(y) >= 1
  unsigned long level = 0;
  Rational a;

  // min(level, phi - level).
  unsigned long exponent() const;
  Rational value() const;
};

// The tent block for height phi.
std::vector<Rational> tent_block(unsigned long phi, const Rational& a);
// Direct sum of the block.
Rational tent_block_sum(unsigned long phi, const Rational& a);
// (a+1)/(a-1) (a^{floor(phi/2)} - 1), plus a^{floor(phi/2)} when phi is odd.
Rational tent_block_closed_form(unsigned long phi, const Rational& a);

struct SkyscraperParams {
  Rational a;
  DigitLawPtr base;   // law of phi
  std::uint64_t seed = 0;
};

// Default base law: power_tail(5/2).
DigitLawPtr default_skyscraper_base();

class SkyscraperProcess final : public ValueProcess {
 public:
  explicit SkyscraperProcess(SkyscraperParams params);

  void next(Value& out) override;
  std::string name() const override;
  nlohmann::json diagnostics() const override;

  // Advances the tower, returning the exponent of the emitted value and the
  // value itself (exact).
  unsigned long step(Rational* value_q, BigInt* value_z);

  std::uint64_t blocks_completed() const { return blocks_; }
  std::uint64_t anchor_failures() const { return anchor_failures_; }
  bool integer_base() const { return integer_a_; }

 private:
  void start_block();
  void close_block();

  SkyscraperParams params_;
  BitSource bits_;
  bool integer_a_;
  BigInt a_int_;
  unsigned long phi_ = 0;
  unsigned long level_ = 0;
  BigInt cur_z_;
  Rational cur_q_;
  BigInt block_sum_z_;
  Rational block_sum_q_;
  std::uint64_t blocks_ = 0;
  std::uint64_t anchor_failures_ = 0;
  unsigned long max_phi_ = 0;
};

// Digits ceil(e^Psi) of the skyscraper values.  Exact below kDigitBitCap
// bits, log-only above.
class SkyscraperDigitSource final : public DigitSource {
 public:
  explicit SkyscraperDigitSource(SkyscraperParams params);
  bool next(DigitEntry& out) override;
  std::string name() const override;

 private:
  SkyscraperProcess process_;
};

// ceil(e^psi) for psi >= 0, exact.
BigInt ceil_exp(const Rational& psi);

}  // namespace cflab
