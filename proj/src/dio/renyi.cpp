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

#include "cflab/dio/renyi.hpp"

#include <functional>

#include "cflab/error.hpp"

namespace cflab {

namespace {

using Weight = std::function<Rational(const CylinderId&)>;

RenyiCheckReport run_check(std::string measure, const Weight& weight, std::size_t max_prefix_len,
                           unsigned long max_digit, std::size_t max_future_len) {
  if (max_prefix_len < 1 || max_digit < 1) {
    throw InvalidArgument("renyi check: prefix length and max digit must be >= 1");
  }
  if (max_future_len == 0) max_future_len = max_prefix_len;
  const auto as = enumerate_cylinders(max_prefix_len, max_digit);
  const auto bs = max_future_len == max_prefix_len ? as
                                                   : enumerate_cylinders(max_future_len, max_digit);
  std::vector<Rational> wa;
  std::vector<Rational> wb;
  for (const auto& a : as) wa.push_back(weight(a));
  for (const auto& b : bs) wb.push_back(weight(b));

  RenyiCheckReport out;
  out.measure = std::move(measure);
  const RealInterval upper = RealInterval::exp_of(8);
  const RealInterval lower = RealInterval::exp_of(-8);
  out.within_bound = true;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (sgn(wa[i]) == 0) continue;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (sgn(wb[j]) == 0) continue;
      RenyiPair p;
      p.a = as[i];
      p.b = bs[j];
      p.n = as[i].prefix.size();
      p.ratio = weight(as[i].concat(bs[j])) / (wa[i] * wb[j]);
      if (out.pairs.empty()) {
        out.max_ratio = p.ratio;
        out.min_ratio = p.ratio;
      } else {
        if (p.ratio > out.max_ratio) out.max_ratio = p.ratio;
        if (p.ratio < out.min_ratio) out.min_ratio = p.ratio;
      }
      if (!upper.certainly_greater_equal(p.ratio) || !lower.certainly_less_equal(p.ratio)) {
        out.within_bound = false;
      }
      out.pairs.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

nlohmann::json RenyiCheckReport::to_json(bool include_pairs) const {
  nlohmann::json j = {{"measure", measure},
                      {"pair_count", pairs.size()},
                      {"max_ratio", to_string(max_ratio)},
                      {"max_ratio_approx", max_ratio.get_d()},
                      {"min_ratio", to_string(min_ratio)},
                      {"min_ratio_approx", min_ratio.get_d()},
                      {"within_bound", within_bound}};
  if (include_pairs) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : pairs) {
      ps.push_back({{"a", p.a.to_string()},
                    {"b", p.b.to_string()},
                    {"n", p.n},
                    {"ratio", to_string(p.ratio)}});
    }
    j["pairs"] = std::move(ps);
  }
  return j;
}

RenyiCheckReport renyi_cylinder_check(std::size_t max_prefix_len, unsigned long max_digit,
                                      std::size_t max_future_len) {
  return run_check("lebesgue", cylinder_length, max_prefix_len, max_digit, max_future_len);
}

RenyiCheckReport renyi_product_check(const DigitLawPtr& law, std::size_t max_prefix_len,
                                     unsigned long max_digit, std::size_t max_future_len) {
  if (!law->exact_pmf(BigInt(1))) {
    throw InvalidArgument("renyi_product_check: law '" + law->name() + "' has no exact pmf");
  }
  auto weight = [&](const CylinderId& id) {
    Rational w(1);
    for (const auto& a : id.prefix) w *= *law->exact_pmf(a);
    return w;
  };
  return run_check("iid:" + law->name(), weight, max_prefix_len, max_digit, max_future_len);
}

}  // namespace cflab
