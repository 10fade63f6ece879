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

#include "cflab/measures/digit_set.hpp"

#include <algorithm>

#include "cflab/error.hpp"

namespace cflab {

DigitSet DigitSet::multiples(unsigned long d) {
  if (d < 1) throw InvalidArgument("multiples needs d >= 1");
  return DigitSet(Kind::kMultiples, d);
}

DigitSet DigitSet::at_least(unsigned long m) {
  if (m < 1) throw InvalidArgument("at_least needs m >= 1");
  return DigitSet(Kind::kAtLeast, m);
}

DigitSet DigitSet::finite(std::vector<BigInt> elements) {
  if (elements.empty()) throw InvalidArgument("finite digit set must be non-empty");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.front() < 1) throw InvalidArgument("digit set elements must be >= 1");
  DigitSet s(Kind::kFinite, 0);
  s.elements_ = std::move(elements);
  return s;
}

bool DigitSet::contains(const BigInt& n) const {
  if (n < 1) return false;
  switch (kind_) {
    case Kind::kAll: return true;
    case Kind::kEven: return mpz_even_p(n.get_mpz_t()) != 0;
    case Kind::kOdd: return mpz_odd_p(n.get_mpz_t()) != 0;
    case Kind::kMultiples: return mpz_divisible_ui_p(n.get_mpz_t(), param_) != 0;
    case Kind::kAtLeast: return n >= param_;
    case Kind::kFinite: return std::binary_search(elements_.begin(), elements_.end(), n);
  }
  return false;
}

BigInt DigitSet::element(const BigInt& j) const {
  if (j < 1) throw InvalidArgument("digit set index must be >= 1");
  switch (kind_) {
    case Kind::kAll: return j;
    case Kind::kEven: return 2 * j;
    case Kind::kOdd: return 2 * j - 1;
    case Kind::kMultiples: return BigInt(param_) * j;
    case Kind::kAtLeast: return j + (param_ - 1);
    case Kind::kFinite:
      if (j > static_cast<unsigned long>(elements_.size())) {
        throw InvalidArgument("index beyond finite digit set");
      }
      return elements_[mpz_get_ui(j.get_mpz_t()) - 1];
  }
  return j;
}

BigInt DigitSet::count_below(const BigInt& n) const {
  if (n <= 1) return 0;
  const BigInt m = n - 1;  // count elements in [1, m]
  switch (kind_) {
    case Kind::kAll: return m;
    case Kind::kEven: return m / 2;
    case Kind::kOdd: return (m + 1) / 2;
    case Kind::kMultiples: return m / BigInt(param_);
    case Kind::kAtLeast: return m >= param_ ? BigInt(m - param_ + 1) : BigInt(0);
    case Kind::kFinite:
      return BigInt(static_cast<unsigned long>(
          std::lower_bound(elements_.begin(), elements_.end(), n) - elements_.begin()));
  }
  return 0;
}

nlohmann::json DigitSet::to_json() const {
  switch (kind_) {
    case Kind::kAll: return {{"type", "all"}};
    case Kind::kEven: return {{"type", "even"}};
    case Kind::kOdd: return {{"type", "odd"}};
    case Kind::kMultiples: return {{"type", "multiples"}, {"d", param_}};
    case Kind::kAtLeast: return {{"type", "at_least"}, {"min", param_}};
    case Kind::kFinite: {
      nlohmann::json j{{"type", "finite"}, {"elements", nlohmann::json::array()}};
      for (const auto& e : elements_) j["elements"].push_back(e.get_str());
      return j;
    }
  }
  return {};
}

DigitSet DigitSet::parse(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ConfigError("digit set must be an object with a string 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  auto only = [&](std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
        throw ConfigError("unknown key '" + it.key() + "' in digit set");
      }
    }
  };
  try {
    if (type == "all") { only({"type"}); return all(); }
    if (type == "even") { only({"type"}); return even(); }
    if (type == "odd") { only({"type"}); return odd(); }
    if (type == "multiples") { only({"type", "d"}); return multiples(j.at("d").get<unsigned long>()); }
    if (type == "at_least") { only({"type", "min"}); return at_least(j.at("min").get<unsigned long>()); }
    if (type == "finite") {
      only({"type", "elements"});
      std::vector<BigInt> els;
      for (const auto& e : j.at("elements")) {
        Rational q = json_rational(e, "digit set element");
        if (q.get_den() != 1) throw ConfigError("digit set elements must be integers");
        els.push_back(q.get_num());
      }
      return finite(std::move(els));
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("digit set: ") + e.what());
  }
  throw ConfigError("unknown digit set type '" + type + "'");
}

namespace {

class RestrictedLaw final : public DigitLaw {
 public:
  RestrictedLaw(DigitSet set, DigitLawPtr index_law)
      : set_(std::move(set)), index_(std::move(index_law)) {}

  void sample(BitSource& bits, DigitEntry& out) const override {
    index_->sample(bits, out);
    if (out.log_value) {
      throw UndecidableAtCap("restricted law index exceeded the exact digit cap");
    }
    out.value = set_.element(out.value);
  }

  RealInterval survival(const BigInt& n, mpfr_prec_t prec) const override {
    return index_->survival(set_.count_below(n) + 1, prec);
  }

  std::optional<Rational> exact_pmf(const BigInt& n) const override {
    if (!set_.contains(n)) return Rational(0);
    auto p = index_->exact_pmf(set_.count_below(n) + 1);
    return p;
  }

  std::optional<std::vector<BigInt>> finite_support() const override {
    auto idx = index_->finite_support();
    if (!idx) return std::nullopt;
    std::vector<BigInt> out;
    for (const auto& j : *idx) out.push_back(set_.element(j));
    return out;
  }

  bool mean_finite() const override { return index_->mean_finite(); }
  bool log_mean_finite() const override { return index_->log_mean_finite(); }
  nlohmann::json to_json() const override {
    return {{"family", "indexed"}, {"set", set_.to_json()}, {"index_law", index_->to_json()}};
  }
  std::string name() const override { return "restricted(" + index_->name() + ")"; }

 private:
  DigitSet set_;
  DigitLawPtr index_;
};

}  // namespace

DigitLawPtr make_restricted_law(const DigitSet& set, DigitLawPtr law, bool allow_finite) {
  if (!law) throw InvalidArgument("restricted law needs a law");
  if (!set.is_infinite() && !allow_finite) {
    throw InvalidArgument("digit set K must be infinite; pass allow_finite to override");
  }
  if (auto support = law->finite_support()) {
    // Table on actual digits: every value must lie in K.
    for (const auto& v : *support) {
      if (!set.contains(v)) {
        throw InvalidArgument("pmf puts mass on " + v.get_str() + ", outside the digit set");
      }
    }
    return law;
  }
  if (!set.is_infinite()) {
    throw InvalidArgument("a finite digit set needs a table law on its elements");
  }
  return std::make_shared<RestrictedLaw>(set, std::move(law));
}

}  // namespace cflab
