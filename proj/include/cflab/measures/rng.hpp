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

// Seed derivation and raw bit supply.
//
// Every random object is driven by a BitSource, an mt19937_64 engine seeded
// with a 64-bit value.  Seeds for replicas and sub-streams are derived with
//   derive_seed(seed, index) = mix64(mix64(seed) ^ mix64(index + 0x9e3779b97f4a7c15))
// where mix64 is the splitmix64 finalizer.  Derivation is splittable: a child
// seed can itself be split again, and distinct (seed, index) pairs give
// statistically independent engines.

#pragma once

#include <cstdint>
#include <random>

namespace cflab {

// splitmix64 output function (Stafford variant 13).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Fixed sub-stream indices so composite samplers split seeds the same way.
namespace stream_tag {
inline constexpr std::uint64_t kDigits = 1;
inline constexpr std::uint64_t kBase = 2;
inline constexpr std::uint64_t kPerturbation = 3;
inline constexpr std::uint64_t kTermBase = 16;
}  // namespace stream_tag

class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next_word() {
    ++words_;
    return engine_();
  }
  std::uint64_t words_consumed() const { return words_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t words_ = 0;
};

}  // namespace cflab
