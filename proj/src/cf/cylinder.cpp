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

#include "cflab/cf/cylinder.hpp"

#include "cflab/cf/convergents.hpp"
#include "cflab/error.hpp"

namespace cflab {

void CylinderId::validate() const {
  if (prefix.empty()) throw InvalidArgument("cylinder prefix must be non-empty");
  for (const auto& d : prefix) {
    if (d < 1) throw InvalidArgument("cylinder digit must be >= 1, got " + d.get_str());
  }
}

CylinderId CylinderId::concat(const CylinderId& other) const {
  CylinderId out{prefix};
  out.prefix.insert(out.prefix.end(), other.prefix.begin(), other.prefix.end());
  return out;
}

std::string CylinderId::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) s += ",";
    s += prefix[i].get_str();
  }
  return s + "]";
}

namespace {

ConvergentState state_of(const CylinderId& id) {
  id.validate();
  ConvergentState s;
  for (const auto& a : id.prefix) advance_in_place(s, a);
  return s;
}

}  // namespace

RationalInterval cylinder_interval(const CylinderId& id) {
  const ConvergentState s = state_of(id);
  return RationalInterval::ordered(Rational(s.p_cur, s.q_cur),
                                   Rational(s.p_cur + s.p_prev, s.q_cur + s.q_prev));
}

Rational cylinder_length(const CylinderId& id) {
  const ConvergentState s = state_of(id);
  return Rational(BigInt(1), s.q_cur * (s.q_cur + s.q_prev));
}

DistortionRatio distortion_ratio(const CylinderId& id) {
  const ConvergentState s = state_of(id);
  DistortionRatio out;
  out.sup_ratio = Rational(s.q_cur + s.q_prev, s.q_cur);
  out.inf_ratio = Rational(s.q_cur, s.q_cur + s.q_prev);
  out.sup_ratio.canonicalize();
  out.inf_ratio.canonicalize();
  const RealInterval e4 = RealInterval::exp_of(4);
  const RealInterval em4 = RealInterval::exp_of(-4);
  out.within_bound = e4.certainly_greater_equal(out.sup_ratio) &&
                     em4.certainly_less_equal(out.inf_ratio);
  return out;
}

std::vector<CylinderId> enumerate_cylinders(std::size_t max_len, unsigned long max_digit) {
  std::vector<CylinderId> out;
  if (max_digit == 0) return out;
  std::vector<CylinderId> level{CylinderId{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<CylinderId> next;
    next.reserve(level.size() * max_digit);
    for (const auto& w : level) {
      for (unsigned long d = 1; d <= max_digit; ++d) {
        CylinderId c = w;
        c.prefix.emplace_back(d);
        next.push_back(std::move(c));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace cflab
