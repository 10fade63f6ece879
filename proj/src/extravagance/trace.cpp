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

#include "cflab/extravagance/trace.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "cflab/error.hpp"

namespace cflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return v <= 0.0 ? 0.0 : std::nextafter(v, 0.0); }
double up(double v) { return std::nextafter(v, kInf); }

bool positive(const Value& v) {
  switch (v.kind) {
    case Value::Kind::kInt: return sgn(v.z) > 0;
    case Value::Kind::kRational: return sgn(v.q) > 0;
    case Value::Kind::kReal: return v.r->is_positive();
  }
  return false;
}

bool is_zero(const Value& v) {
  switch (v.kind) {
    case Value::Kind::kInt: return sgn(v.z) == 0;
    case Value::Kind::kRational: return sgn(v.q) == 0;
    case Value::Kind::kReal: return v.r->is_zero();
  }
  return false;
}

nlohmann::json bound_json(const RatioBound& b) { return {b.lo, b.hi}; }

}  // namespace

RatioBound ratio_bound(const BigInt& a, const BigInt& b) {
  if (sgn(b) <= 0) throw InvalidArgument("ratio_bound: denominator must be positive");
  if (sgn(a) == 0) return {0.0, 0.0};
  if (a.fits_slong_p() && b.fits_slong_p()) {
    const long na = a.get_si();
    const long nb = b.get_si();
    if (na < (1L << 53) && nb < (1L << 53)) {
      const double q = static_cast<double>(na) / static_cast<double>(nb);
      if (std::fma(q, static_cast<double>(nb), -static_cast<double>(na)) == 0.0) return {q, q};
      return {down(q), up(q)};
    }
  }
  // a = ma 2^ea with ma in [0.5, 1) truncated, true mantissa in [ma, ma + 2^-53].
  long ea = 0;
  long eb = 0;
  const double ma = mpz_get_d_2exp(&ea, a.get_mpz_t());
  const double mb = mpz_get_d_2exp(&eb, b.get_mpz_t());
  const double ulp = std::ldexp(1.0, -53);
  const double qlo = down(ma / (mb + ulp));
  const double qhi = up((ma + ulp) / mb);
  const long shift = ea - eb;
  if (shift > 2000) return {DBL_MAX, kInf};
  if (shift < -2000) return {0.0, DBL_MIN};
  double lo = down(std::ldexp(qlo, static_cast<int>(shift)));
  double hi = up(std::ldexp(qhi, static_cast<int>(shift)));
  if (std::isinf(lo)) lo = DBL_MAX;
  return {lo, hi};
}

RatioBound ratio_bound(const Rational& q) {
  if (sgn(q) < 0) throw InvalidArgument("ratio_bound: negative ratio");
  if (q.get_den() == 1) return ratio_bound(q.get_num(), BigInt(1));
  mpfr_t lo;
  mpfr_t hi;
  mpfr_init2(lo, 53);
  mpfr_init2(hi, 53);
  mpfr_set_q(lo, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi, q.get_mpq_t(), MPFR_RNDU);
  RatioBound out{mpfr_get_d(lo, MPFR_RNDD), mpfr_get_d(hi, MPFR_RNDU)};
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

RatioBound ratio_bound(const RealInterval& r) {
  double lo = r.lower();
  if (lo < 0.0) lo = 0.0;
  return {lo, r.upper()};
}

const RatioBound& ExtravaganceTrace::ratio(std::size_t n) const {
  if (!recorded() || n < start_index || n >= start_index + count) {
    throw InvalidArgument("trace has no ratio at n = " + std::to_string(n));
  }
  return ratios[n - start_index];
}

const RatioBound& ExtravaganceTrace::sup_at(std::size_t n) const {
  if (!recorded() || n < start_index || n >= start_index + count) {
    throw InvalidArgument("trace has no running sup at n = " + std::to_string(n));
  }
  return running_sup[n - start_index];
}

nlohmann::json ExtravaganceTrace::to_json(bool include_series) const {
  nlohmann::json j = {
      {"horizon", horizon},
      {"start_index", start_index},
      {"count", count},
      {"estimate", estimate()},
      {"final_sup", bound_json(final_sup)},
      {"tail_max", bound_json(tail_max)},
      {"tail_estimate", tail_estimate()},
      {"argmax", argmax},
  };
  if (include_series && recorded()) {
    nlohmann::json rs = nlohmann::json::array();
    nlohmann::json sup = nlohmann::json::array();
    for (std::size_t i = 0; i < count; ++i) {
      rs.push_back(bound_json(ratios[i]));
      sup.push_back(bound_json(running_sup[i]));
    }
    j["ratios"] = std::move(rs);
    j["running_sup"] = std::move(sup);
  }
  return j;
}

ExtravaganceMeter::ExtravaganceMeter(std::size_t horizon, bool record, mpfr_prec_t prec)
    : horizon_(horizon), record_(record), prec_(prec), sum_(Value::integer(0)) {
  trace_.horizon = horizon;
}

RealInterval ExtravaganceMeter::sum() const { return sum_.to_real(prec_); }

RatioBound ExtravaganceMeter::ratio_of(const Value& x) const {
  using K = Value::Kind;
  if (x.kind == K::kInt && sum_.kind == K::kInt) return ratio_bound(x.z, sum_.z);
  if (x.kind != K::kReal && sum_.kind != K::kReal) {
    return ratio_bound(Rational(x.to_rational() / sum_.to_rational()));
  }
  return ratio_bound(x.to_real(prec_) / sum_.to_real(prec_));
}

void ExtravaganceMeter::push(const Value& x) {
  if (done()) throw InvalidArgument("extravagance meter: horizon reached");
  if (x.is_negative()) {
    throw InvalidArgument("extravagance input x_" + std::to_string(pushed_ + 1) +
                          " is negative");
  }
  last_.reset();
  if (pushed_ >= 1 && trace_.start_index != 0) {
    // M_n with n = pushed_.
    const std::size_t n = pushed_;
    const RatioBound m = is_zero(x) ? RatioBound{} : ratio_of(x);
    last_ = m;
    ExtravaganceTrace& t = trace_;
    if (t.count == 0) {
      t.final_sup = m;
      t.argmax = n;
    } else {
      if (m.lo > t.final_sup.lo) {
        t.final_sup.lo = m.lo;
        t.argmax = n;
      }
      if (m.hi > t.final_sup.hi) t.final_sup.hi = m.hi;
    }
    const std::size_t tail_start = horizon_ / 2 == 0 ? 1 : horizon_ / 2;
    if (n >= tail_start) {
      t.tail_max.lo = std::max(t.tail_max.lo, m.lo);
      t.tail_max.hi = std::max(t.tail_max.hi, m.hi);
    }
    ++t.count;
    if (record_) {
      t.ratios.push_back(m);
      t.running_sup.push_back(t.final_sup);
    }
  }
  if (x.kind == Value::Kind::kReal && sum_.kind == Value::Kind::kReal) {
    *sum_.r += *x.r;
  } else if (x.kind == Value::Kind::kReal) {
    RealInterval s = sum_.to_real(prec_);
    s += *x.r;
    sum_ = Value::real(std::move(s));
  } else if (!is_zero(x)) {
    accumulate(sum_, x);
  }
  ++pushed_;
  if (trace_.start_index == 0 && positive(sum_)) trace_.start_index = pushed_;
}

ExtravaganceTrace sequence_extravagance(const std::vector<Value>& xs, std::size_t horizon,
                                        bool record) {
  if (xs.size() < horizon) {
    throw InvalidArgument("sequence_extravagance: " + std::to_string(xs.size()) +
                          " values for horizon " + std::to_string(horizon));
  }
  ExtravaganceMeter meter(horizon, record);
  for (std::size_t k = 0; k < horizon; ++k) meter.push(xs[k]);
  return meter.finish();
}

ExtravaganceTrace sequence_extravagance(const std::vector<Rational>& xs, std::size_t horizon,
                                        bool record) {
  std::vector<Value> vs;
  vs.reserve(xs.size());
  for (const auto& q : xs) vs.push_back(Value::rational(q));
  return sequence_extravagance(vs, horizon, record);
}

ExtravaganceTrace run_extravagance(ValueProcess& process, std::size_t horizon, bool record) {
  ExtravaganceMeter meter(horizon, record);
  Value x;
  for (std::size_t k = 0; k < horizon; ++k) {
    process.next(x);
    meter.push(x);
  }
  return meter.finish();
}

}  // namespace cflab
