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

// Exact cylinder correlation ratios mu(A B) / (mu(A) mu(B)), where the
// concatenated cylinder A B is A ∩ G^{-|A|} B.  A ranges over cylinders of
// length <= max_prefix_len and B over lengths <= max_future_len, all digits
// <= max_digit.

#pragma once

#include <vector>

#include "cflab/cf/cylinder.hpp"
#include "cflab/measures/digit_law.hpp"
#include "json.hpp"

namespace cflab {

struct RenyiPair {
  CylinderId a;
  CylinderId b;
  std::size_t n = 0;  // |A|
  Rational ratio;
};

struct RenyiCheckReport {
  std::string measure;
  std::vector<RenyiPair> pairs;
  Rational max_ratio;
  Rational min_ratio;
  // Every ratio certified inside [e^-8, e^8].
  bool within_bound = false;

  nlohmann::json to_json(bool include_pairs = true) const;
};

// Lebesgue measure.  max_future_len = 0 means max_prefix_len.
RenyiCheckReport renyi_cylinder_check(std::size_t max_prefix_len, unsigned long max_digit,
                                      std::size_t max_future_len = 0);

// The iid product measure with weights prod P(a = a_i); requires exact_pmf.
// Pairs of zero weight are skipped.
RenyiCheckReport renyi_product_check(const DigitLawPtr& law, std::size_t max_prefix_len,
                                     unsigned long max_digit, std::size_t max_future_len = 0);

}  // namespace cflab
