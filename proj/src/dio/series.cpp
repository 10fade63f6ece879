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

#include "cflab/dio/series.hpp"

#include <algorithm>
#include <cmath>

#include "cflab/error.hpp"

namespace cflab {

namespace {

// [clamp(lo), clamp(hi)] with clamp(v) = min(max(v, 0), 1).
RealInterval clamp_unit(const RealInterval& t) {
  const mpfr_prec_t prec = t.precision();
  BigFloat lo(prec);
  BigFloat hi(prec);
  mpfr_set(lo.get(), t.lo().get(), MPFR_RNDD);
  mpfr_set(hi.get(), t.hi().get(), MPFR_RNDU);
  for (BigFloat* v : {&lo, &hi}) {
    if (mpfr_sgn(v->get()) < 0) mpfr_set_zero(v->get(), 1);
    if (mpfr_cmp_ui(v->get(), 1) > 0) mpfr_set_ui(v->get(), 1, MPFR_RNDN);
  }
  return RealInterval::from_endpoints(lo, hi, prec);
}

BigInt floor_of(const BigFloat& v) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), v.get(), MPFR_RNDD);
  return z;
}

RealInterval join(const RealInterval& lower_part, const RealInterval& upper_part) {
  return RealInterval::from_endpoints(lower_part.lo(), upper_part.hi(), lower_part.precision());
}

std::vector<std::size_t> normalized_checkpoints(std::vector<std::size_t> cps, std::size_t horizon) {
  for (auto& c : cps) c = std::min(c, horizon);
  cps.push_back(horizon);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  cps.erase(std::remove(cps.begin(), cps.end(), std::size_t{0}), cps.end());
  return cps;
}

std::size_t root_floor(std::size_t n, unsigned k) {
  auto r = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / k)));
  while (r > 1 && std::pow(static_cast<double>(r), k) > static_cast<double>(n)) --r;
  while (std::pow(static_cast<double>(r + 1), k) <= static_cast<double>(n)) ++r;
  return std::max<std::size_t>(r, 1);
}

nlohmann::json interval_json(const RealInterval& r) { return {r.lower(), r.upper()}; }

// Partial sums sampled at checkpoints with the classifier applied.
class Curve {
 public:
  Curve(std::size_t horizon, mpfr_prec_t prec) : sum_(prec) {
    out_.checkpoints = {root_floor(horizon, 4), root_floor(horizon, 2)};
    for (std::size_t d = 10; d < horizon; d *= 10) out_.checkpoints.push_back(d);
    out_.checkpoints = normalized_checkpoints(out_.checkpoints, horizon);
  }

  void add(std::size_t n, const RealInterval& term) {
    sum_ += term;
    while (next_ < out_.checkpoints.size() && out_.checkpoints[next_] == n) {
      out_.sums.push_back(sum_);
      ++next_;
    }
  }

  CurveClass finish(std::size_t horizon) {
    auto value_at = [&](std::size_t n) {
      const auto it = std::find(out_.checkpoints.begin(), out_.checkpoints.end(), n);
      return out_.sums[static_cast<std::size_t>(it - out_.checkpoints.begin())].mid();
    };
    const double a = value_at(root_floor(horizon, 4));
    const double b = value_at(root_floor(horizon, 2));
    const double c = value_at(horizon);
    out_.increment_low = b - a;
    out_.increment_high = c - b;
    out_.growing = classify_growing(out_.increment_low, out_.increment_high);
    return out_;
  }

 private:
  RealInterval sum_;
  CurveClass out_;
  std::size_t next_ = 0;
};

}  // namespace

MuCdf::MuCdf(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {
  const RealInterval at0 = fn_(RealInterval(kDefaultPrecision));
  if (!at0.is_zero()) throw InvalidArgument("mu_cdf '" + name_ + "': mu((0,0)) must be 0");
}

MuCdf MuCdf::lebesgue() { return MuCdf("lebesgue", clamp_unit); }

MuCdf MuCdf::gauss() {
  return MuCdf("gauss", [](const RealInterval& t) {
    const RealInterval c = clamp_unit(t);
    if (c.is_zero()) return c;
    const mpfr_prec_t prec = c.precision();
    return log(RealInterval::from_long(1, prec) + c) / RealInterval::log2(prec);
  });
}

MuCdf MuCdf::digit_law(DigitLawPtr law) {
  const std::string name = "digit_law:" + law->name();
  return MuCdf(name, [law = std::move(law)](const RealInterval& t) {
    const mpfr_prec_t prec = t.precision();
    if (mpfr_sgn(t.hi().get()) <= 0) return RealInterval(prec);
    if (mpfr_cmp_ui(t.lo().get(), 1) >= 0) return RealInterval::from_long(1, prec);
    const RealInterval one = RealInterval::from_long(1, prec);
    // Upper bound from t.hi, lower bound from t.lo; 1/t is rounded outward.
    RealInterval upper = one;
    if (mpfr_cmp_ui(t.hi().get(), 1) < 0) {
      const RealInterval inv = one / RealInterval::from_endpoints(t.hi(), t.hi(), prec);
      const BigInt k = floor_of(inv.lo());
      if (k > 1) upper = law->survival(k, prec);
    }
    RealInterval lower(prec);
    if (mpfr_sgn(t.lo().get()) > 0) {
      const RealInterval inv = one / RealInterval::from_endpoints(t.lo(), t.lo(), prec);
      lower = law->survival(floor_of(inv.hi()) + 1, prec);
    }
    return join(lower, upper);
  });
}

bool classify_growing(double increment_low, double increment_high) {
  if (increment_low <= 0.0) return increment_high > 0.0;
  return increment_high >= 0.75 * increment_low;
}

nlohmann::json SeriesReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    pts.push_back({{"n", checkpoints[i]}, {"sum", interval_json(sums[i])}});
  }
  nlohmann::json j = {{"cdf", cdf}, {"f", f}, {"horizon", horizon}, {"start", start},
                      {"partial_sums", std::move(pts)}};
  j["declared_convergent"] =
      declared_convergent ? nlohmann::json(*declared_convergent) : nlohmann::json(nullptr);
  return j;
}

SeriesReport series_partial_sums(const MuCdf& cdf, const ApproxFunction& f, std::size_t horizon,
                                 std::vector<std::size_t> checkpoints,
                                 std::optional<bool> declared_convergent, mpfr_prec_t prec) {
  if (horizon < 1) throw InvalidArgument("series_partial_sums: horizon must be >= 1");
  SeriesReport out;
  out.cdf = cdf.name();
  out.f = f.text();
  out.horizon = horizon;
  out.start = f.domain_start();
  out.declared_convergent = declared_convergent;
  out.checkpoints = normalized_checkpoints(std::move(checkpoints), horizon);
  RealInterval sum(prec);
  std::optional<RealInterval> prev_t;
  std::optional<RealInterval> prev_mu;
  std::size_t next = 0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n >= out.start) {
      const RealInterval nn = RealInterval::from_int(BigInt(static_cast<unsigned long>(n)), prec);
      const RealInterval t = nn * f(nn);
      const RealInterval mu = cdf(t);
      if (prev_t && mpfr_cmp(t.hi().get(), prev_t->lo().get()) <= 0 &&
          prev_mu->certainly_less(mu)) {
        // t_n <= t_{n-1} yet mu((0, t_n)) certainly above mu((0, t_{n-1})).
        throw InvalidArgument("mu_cdf '" + cdf.name() + "' is not monotone near n = " +
                              std::to_string(n));
      }
      sum += mu / nn;
      prev_t = t;
      prev_mu = mu;
    }
    while (next < out.checkpoints.size() && out.checkpoints[next] == n) {
      out.sums.push_back(sum);
      ++next;
    }
  }
  return out;
}

nlohmann::json CurveClass::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    pts.push_back({{"n", checkpoints[i]}, {"sum", interval_json(sums[i])}});
  }
  return {{"partial_sums", std::move(pts)},
          {"increment_low", increment_low},
          {"increment_high", increment_high},
          {"class", growing ? "growing" : "bounded"}};
}

nlohmann::json CondensationReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    rs.push_back({{"s", to_string(r.s)}, {"series", r.series.to_json()}});
  }
  return {{"law", law}, {"horizon", horizon}, {"log_mean", log_mean.to_json()},
          {"rows", std::move(rs)}, {"agree", agree}};
}

CondensationReport condensation_equivalence_check(DigitLawPtr law,
                                                  const std::vector<Rational>& s_values,
                                                  std::size_t horizon, mpfr_prec_t prec) {
  if (horizon < 16) throw InvalidArgument("condensation: horizon must be >= 16");
  CondensationReport out;
  out.law = law->name();
  out.horizon = horizon;

  // E log a partial sums: sum log n (S(n) - S(n+1)).
  {
    Curve curve(horizon, prec);
    RealInterval s_next = law->survival(BigInt(1), prec);
    for (std::size_t n = 1; n <= horizon; ++n) {
      const BigInt nb(static_cast<unsigned long>(n));
      const RealInterval s_cur = s_next;
      s_next = law->survival(nb + 1, prec);
      if (n == 1) {
        curve.add(n, RealInterval(prec));
        continue;
      }
      RealInterval p = s_cur - s_next;
      if (!p.is_nonnegative()) p = join(RealInterval(prec), p);
      curve.add(n, log(RealInterval::from_int(nb, prec)) * p);
    }
    out.log_mean = curve.finish(horizon);
  }

  for (const auto& s : s_values) {
    if (s <= 0) throw InvalidArgument("condensation: s must be > 0");
    const unsigned long p = s.get_num().get_ui();
    const unsigned long q = s.get_den().get_ui();
    Curve curve(horizon, prec);
    // S(k) and S(k + 1) for the last k seen; k is non-decreasing in n.
    BigInt cached_k(-1);
    RealInterval s_k(prec);
    RealInterval s_k1(prec);
    auto survival = [&](const BigInt& k) {
      return k <= 1 ? RealInterval::from_long(1, prec) : law->survival(k, prec);
    };
    for (std::size_t n = 1; n <= horizon; ++n) {
      // mu((0, n^-s)) from k = floor(n^s): exactly S(k) when n^s is an integer,
      // else within [S(k + 1), S(k)].
      const BigInt np = pow(BigInt(static_cast<unsigned long>(n)), p);
      BigInt k;
      const bool exact = mpz_root(k.get_mpz_t(), np.get_mpz_t(), q) != 0;
      if (k != cached_k) {
        s_k = k == cached_k + 1 ? s_k1 : survival(k);
        s_k1 = survival(k + 1);
        cached_k = k;
      }
      const RealInterval mu = exact ? s_k : join(s_k1, s_k);
      curve.add(n, mu / RealInterval::from_int(BigInt(static_cast<unsigned long>(n)), prec));
    }
    out.rows.push_back({s, curve.finish(horizon)});
  }
  out.agree = std::all_of(out.rows.begin(), out.rows.end(), [&](const CondensationRow& r) {
    return r.series.growing == out.log_mean.growing;
  });
  return out;
}

}  // namespace cflab
