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

#include "cflab/measures/digit_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cflab/error.hpp"

namespace cflab {

BigInt DigitLaw::sample_exact(BitSource& bits) const {
  DigitEntry e;
  sample(bits, e);
  if (e.log_value) throw Error("sampled digit exceeds the exact bit cap");
  return e.value;
}

RealInterval DigitLaw::pmf(const BigInt& n, mpfr_prec_t prec) const {
  RealInterval p = survival(n, prec) - survival(n + 1, prec);
  if (mpfr_sgn(p.lo().get()) < 0) {
    BigFloat zero(prec);
    p = RealInterval::from_endpoints(zero, p.hi(), prec);
  }
  return p;
}

Rational json_rational(const nlohmann::json& j, const std::string& what) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
    if (j.is_number_unsigned()) {
      return Rational(BigInt(std::to_string(j.get<unsigned long long>())));
    }
    if (j.is_number_float()) {
      // Shortest round-trip decimal, read exactly.
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      return parse_rational(buf);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(what + ": " + e.what());
  }
  throw ConfigError(what + " must be a number or a rational string");
}

namespace {

// 2^64 c rounded down and up, saturated; used to decide comparisons of U with
// c from its first word.
struct FixedThreshold {
  std::uint64_t floor_v;
  std::uint64_t ceil_v;
  bool saturated;
};

FixedThreshold fixed_threshold(const Rational& c) {
  Rational scaled = c;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), 64);
  BigInt fl, ce;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpz_cdiv_q(ce.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  FixedThreshold t{0, 0, false};
  if (mpz_sizeinbase(ce.get_mpz_t(), 2) > 64) {
    t.saturated = true;
    return t;
  }
  t.floor_v = mpz_get_ui(fl.get_mpz_t());
  t.ceil_v = mpz_get_ui(ce.get_mpz_t());
  return t;
}

class TableLaw final : public DigitLaw {
 public:
  TableLaw(std::vector<BigInt> values, std::vector<Rational> weights) {
    if (values.empty() || values.size() != weights.size()) {
      throw InvalidArgument("table law needs equally many values and weights (>= 1)");
    }
    std::map<BigInt, Rational> merged;
    Rational total = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 1) throw InvalidArgument("table law values must be >= 1");
      if (weights[i] <= 0) throw InvalidArgument("table law weights must be positive");
      if (merged.count(values[i])) throw InvalidArgument("table law values must be distinct");
      merged[values[i]] = weights[i];
      total += weights[i];
    }
    Rational cum = 0;
    for (auto& [v, w] : merged) {
      values_.push_back(v);
      probs_.push_back(w / total);
      cum += w / total;
      cumulative_.push_back(cum);
      fixed_.push_back(fixed_threshold(cum));
    }
  }

  void sample(BitSource& bits, DigitEntry& out) const override {
    out.log_value.reset();
    LazyUniform u(bits);
    const std::uint64_t w = u.leading_word();
    // Smallest j with U < cumulative_[j].
    std::size_t lo = 0, hi = values_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const FixedThreshold& f = fixed_[mid];
      bool below;
      if (!f.saturated && w < f.floor_v) {
        below = true;  // U < (w+1)/2^64 <= floor(2^64 c)/2^64 <= c
      } else if (!f.saturated && w >= f.ceil_v) {
        below = false;
      } else {
        below = u.less_than(cumulative_[mid]);
      }
      if (below) hi = mid; else lo = mid + 1;
    }
    out.value = values_[lo];
  }

  RealInterval survival(const BigInt& n, mpfr_prec_t prec) const override {
    Rational s = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] >= n) s += probs_[i];
    }
    return RealInterval::from_rational(s, prec);
  }

  std::optional<Rational> exact_pmf(const BigInt& n) const override {
    auto it = std::lower_bound(values_.begin(), values_.end(), n);
    if (it == values_.end() || *it != n) return Rational(0);
    return probs_[static_cast<std::size_t>(it - values_.begin())];
  }

  std::optional<std::vector<BigInt>> finite_support() const override { return values_; }
  bool mean_finite() const override { return true; }
  bool log_mean_finite() const override { return true; }

  nlohmann::json to_json() const override {
    nlohmann::json j;
    j["family"] = "table";
    j["values"] = nlohmann::json::array();
    j["weights"] = nlohmann::json::array();
    for (std::size_t i = 0; i < values_.size(); ++i) {
      j["values"].push_back(values_[i].get_str());
      j["weights"].push_back(to_string(probs_[i]));
    }
    return j;
  }
  std::string name() const override { return "table(" + std::to_string(values_.size()) + ")"; }

 private:
  std::vector<BigInt> values_;
  std::vector<Rational> probs_;
  std::vector<Rational> cumulative_;
  std::vector<FixedThreshold> fixed_;
};

// a = floor(V(U)) for a decreasing V.  Subclasses give a double evaluation
// (used only when its error margin certifies the floor) and an interval
// evaluation of log V.
class MonotoneTailLaw : public DigitLaw {
 public:
  void sample(BitSource& bits, DigitEntry& out) const override {
    out.log_value.reset();
    LazyUniform u(bits);
    const std::uint64_t w = u.leading_word();
    const std::uint64_t top = w >> 11;
    if (top > 0) {
      const double ulo = std::ldexp(static_cast<double>(top), -53);
      const double uhi = std::ldexp(static_cast<double>(top + 1), -53);
      double vlo = fast_value(uhi);
      double vhi = fast_value(ulo);
      if (std::isfinite(vhi) && vhi < 0x1p52) {
        vlo *= 1.0 - 1e-12;
        vhi *= 1.0 + 1e-12;
        const double flo = std::floor(vlo), fhi = std::floor(vhi);
        if (flo == fhi && flo >= 1.0) {
          out.value = static_cast<unsigned long>(flo);
          return;
        }
      }
    }
    slow_sample(u, out);
  }

 protected:
  virtual double fast_value(double u) const = 0;
  // log V(u) over the interval u; monotone interval evaluation.
  virtual RealInterval log_value(const RealInterval& u) const = 0;

 private:
  void slow_sample(LazyUniform& u, DigitEntry& out) const {
    mpfr_prec_t prec = 128;
    for (;;) {
      RealInterval uu = u.real(prec + 64);
      RealInterval lv = log_value(uu);
      // Bits of V, from its logarithm.
      const double bits_hi = lv.upper() / std::log(2.0);
      const double bits_lo = lv.lower() / std::log(2.0);
      if (bits_lo > static_cast<double>(kInverseCdfExactBits)) {
        return log_only(u, out);
      }
      const mpfr_prec_t need = static_cast<mpfr_prec_t>(std::max(0.0, bits_hi)) + 96;
      if (need > prec) {
        prec = need;
        continue;
      }
      RealInterval v = exp(lv);
      BigInt flo, fhi;
      mpfr_get_z(flo.get_mpz_t(), v.lo().get(), MPFR_RNDD);
      mpfr_get_z(fhi.get_mpz_t(), v.hi().get(), MPFR_RNDD);
      if (flo == fhi && flo >= 1) {
        out.value = flo;
        return;
      }
      // Either U is too coarse or the working precision is; grow both.
      if (u.bits() < static_cast<std::size_t>(prec)) {
        u.refine();
      } else {
        prec += 64;
        u.refine();
      }
    }
  }

  void log_only(LazyUniform& u, DigitEntry& out) const {
    const mpfr_prec_t prec = 192;
    for (;;) {
      RealInterval lv = log_value(u.real(prec));
      const double width = lv.width();
      if (width <= std::ldexp(std::max(1.0, lv.upper()), -80) || u.bits() + 64 > kMaxUniformBits) {
        // a = floor(V) with V > 2^3584: log V - log a < 2/V < 2^{-1000}.
        BigFloat lo(prec);
        mpfr_set(lo.get(), lv.lo().get(), MPFR_RNDD);
        BigFloat eps(prec);
        mpfr_set_ui_2exp(eps.get(), 1, -1000, MPFR_RNDU);
        mpfr_sub(lo.get(), lo.get(), eps.get(), MPFR_RNDD);
        out.value = 0;
        out.log_value = RealInterval::from_endpoints(lo, lv.hi(), prec);
        return;
      }
      u.refine();
    }
  }
};

class PowerTailLaw final : public MonotoneTailLaw {
 public:
  explicit PowerTailLaw(const Rational& s) : s_(s) {
    if (s_ <= 1) throw InvalidArgument("power_tail needs s > 1, got " + to_string(s_));
    inv_exp_ = 1.0 / Rational(s_ - 1).get_d();
    tail_exp_ = s_ - 1;
  }

  RealInterval survival(const BigInt& n, mpfr_prec_t prec) const override {
    if (n <= 1) return RealInterval::from_long(1, prec);
    if (tail_exp_.get_den() == 1 && mpz_fits_ulong_p(tail_exp_.get_num_mpz_t())) {
      const unsigned long e = mpz_get_ui(tail_exp_.get_num_mpz_t());
      return RealInterval::from_rational(Rational(BigInt(1), pow(n, e)), prec);
    }
    return exp(-(RealInterval::from_rational(tail_exp_, prec) *
                 log(RealInterval::from_int(n, prec))));
  }

  bool mean_finite() const override { return s_ > 2; }
  bool log_mean_finite() const override { return true; }
  nlohmann::json to_json() const override {
    return {{"family", "power_tail"}, {"s", to_string(s_)}};
  }
  std::string name() const override { return "power_tail(s=" + to_string(s_) + ")"; }

 protected:
  double fast_value(double u) const override { return std::pow(u, -inv_exp_); }
  RealInterval log_value(const RealInterval& u) const override {
    const RealInterval e = RealInterval::from_rational(1 / tail_exp_, u.precision());
    return -(e * log(u));
  }

 private:
  Rational s_;
  Rational tail_exp_;
  double inv_exp_;
};

class LogTailLaw final : public MonotoneTailLaw {
 public:
  explicit LogTailLaw(const Rational& beta) : beta_(beta) {
    if (beta_ <= 0) throw InvalidArgument("log_tail needs beta > 0, got " + to_string(beta_));
    inv_beta_ = 1.0 / beta_.get_d();
  }

  RealInterval survival(const BigInt& n, mpfr_prec_t prec) const override {
    if (n <= 2) return RealInterval::from_long(1, prec);
    RealInterval ratio = RealInterval::log2(prec) / log(RealInterval::from_int(n, prec));
    if (beta_.get_den() == 1 && beta_ <= 64) {
      RealInterval out = ratio;
      for (unsigned long k = beta_.get_num().get_ui(); k > 1; --k) out = out * ratio;
      return out;
    }
    return pow(ratio, RealInterval::from_rational(beta_, prec));
  }

  bool mean_finite() const override { return false; }
  bool log_mean_finite() const override { return beta_ > 1; }
  nlohmann::json to_json() const override {
    return {{"family", "log_tail"}, {"beta", to_string(beta_)}};
  }
  std::string name() const override { return "log_tail(beta=" + to_string(beta_) + ")"; }

 protected:
  double fast_value(double u) const override {
    const double y = std::pow(u, -inv_beta_);
    if (y > 1000.0) return INFINITY;
    return std::exp2(y);
  }
  RealInterval log_value(const RealInterval& u) const override {
    const mpfr_prec_t prec = u.precision();
    const RealInterval e = RealInterval::from_rational(-1 / beta_, prec);
    return pow(u, e) * RealInterval::log2(prec);
  }

 private:
  Rational beta_;
  double inv_beta_;
};

class GeometricLaw final : public DigitLaw {
 public:
  void sample(BitSource& bits, DigitEntry& out) const override {
    out.log_value.reset();
    unsigned long k = 1;
    for (;;) {
      const std::uint64_t w = bits.next_word();
      if (w != 0) {
        k += static_cast<unsigned long>(__builtin_clzll(w));
        break;
      }
      k += 64;
    }
    out.value = 0;
    mpz_setbit(out.value.get_mpz_t(), k);
  }

  RealInterval survival(const BigInt& n, mpfr_prec_t prec) const override {
    if (n <= 2) return RealInterval::from_long(1, prec);
    // P(2^k >= n) = P(k >= j) = 2^{-(j-1)}, j = ceil(log2 n).
    BigInt m = n - 1;
    const std::size_t j = mpz_sizeinbase(m.get_mpz_t(), 2);
    Rational s(1);
    mpq_div_2exp(s.get_mpq_t(), s.get_mpq_t(), j - 1);
    return RealInterval::from_rational(s, prec);
  }

  std::optional<Rational> exact_pmf(const BigInt& n) const override {
    if (n < 2 || mpz_popcount(n.get_mpz_t()) != 1) return Rational(0);
    Rational p(1);
    mpq_div_2exp(p.get_mpq_t(), p.get_mpq_t(), mpz_sizeinbase(n.get_mpz_t(), 2) - 1);
    return p;
  }

  bool mean_finite() const override { return false; }
  bool log_mean_finite() const override { return true; }
  nlohmann::json to_json() const override { return {{"family", "geometric"}}; }
  std::string name() const override { return "geometric(2^k, 2^-k)"; }
};

}  // namespace

DigitLawPtr make_table_law(std::vector<BigInt> values, std::vector<Rational> weights) {
  return std::make_shared<TableLaw>(std::move(values), std::move(weights));
}

DigitLawPtr make_uniform_law(unsigned long min, unsigned long max) {
  if (min < 1 || max < min) throw InvalidArgument("uniform law needs 1 <= min <= max");
  if (max - min > 1000000) throw InvalidArgument("uniform law range too large for a table");
  std::vector<BigInt> values;
  std::vector<Rational> weights;
  for (unsigned long v = min; v <= max; ++v) {
    values.emplace_back(v);
    weights.emplace_back(1);
  }
  return make_table_law(std::move(values), std::move(weights));
}

DigitLawPtr make_power_tail_law(const Rational& s) { return std::make_shared<PowerTailLaw>(s); }
DigitLawPtr make_log_tail_law(const Rational& beta) { return std::make_shared<LogTailLaw>(beta); }
DigitLawPtr make_geometric_law() { return std::make_shared<GeometricLaw>(); }

namespace {

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace

DigitLawPtr parse_law(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw ConfigError("law must be an object with a string 'family'");
  }
  const std::string family = j["family"].get<std::string>();
  try {
    if (family == "table") {
      check_keys(j, {"family", "values", "weights"}, "table law");
      if (!j.contains("values") || !j["values"].is_array()) {
        throw ConfigError("table law needs a 'values' array");
      }
      std::vector<BigInt> values;
      for (const auto& v : j["values"]) {
        Rational q = json_rational(v, "table value");
        if (q.get_den() != 1) throw ConfigError("table values must be integers");
        values.push_back(q.get_num());
      }
      std::vector<Rational> weights;
      if (j.contains("weights")) {
        for (const auto& w : j["weights"]) weights.push_back(json_rational(w, "table weight"));
      } else {
        weights.assign(values.size(), Rational(1));
      }
      return make_table_law(std::move(values), std::move(weights));
    }
    if (family == "uniform") {
      check_keys(j, {"family", "min", "max"}, "uniform law");
      if (!j.contains("min") || !j.contains("max")) throw ConfigError("uniform law needs min, max");
      return make_uniform_law(j["min"].get<unsigned long>(), j["max"].get<unsigned long>());
    }
    if (family == "power_tail") {
      check_keys(j, {"family", "s"}, "power_tail law");
      if (!j.contains("s")) throw ConfigError("power_tail law needs 's'");
      return make_power_tail_law(json_rational(j["s"], "power_tail s"));
    }
    if (family == "log_tail") {
      check_keys(j, {"family", "beta"}, "log_tail law");
      if (!j.contains("beta")) throw ConfigError("log_tail law needs 'beta'");
      return make_log_tail_law(json_rational(j["beta"], "log_tail beta"));
    }
    if (family == "geometric") {
      check_keys(j, {"family"}, "geometric law");
      return make_geometric_law();
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("law: ") + e.what());
  }
  throw ConfigError("unknown law family '" + family + "'");
}

}  // namespace cflab
