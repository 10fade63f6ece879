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

#include "cflab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cflab/error.hpp"

namespace cflab {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw InvalidArgument("empty rational literal");
  auto parse_int = [&](const std::string& part) {
    BigInt z;
    std::string p = part;
    trim(p);
    if (p.empty() || z.set_str(p, 10) != 0) {
      throw InvalidArgument("malformed rational literal '" + std::string(text) + "'");
    }
    return z;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InvalidArgument("rational with zero denominator: '" + s + "'");
    return make_rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative) whole.erase(whole.begin());
    if (whole.empty()) whole = "0";
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("malformed rational literal '" + s + "'");
    }
    BigInt w = parse_int(whole);
    BigInt f = parse_int(frac);
    BigInt scale = pow(BigInt(10), frac.size());
    Rational q = make_rational(w * scale + f, scale);
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_int(s));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
  BigInt num = pow(BigInt(base.get_num()), exponent);
  BigInt den = pow(BigInt(base.get_den()), exponent);
  return Rational(num, den);
}

std::size_t bit_length(const BigInt& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

// ------------------------------------------------------------ RealInterval

namespace {

mpfr_prec_t joint_precision(const RealInterval& a, const RealInterval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

RealInterval::RealInterval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

RealInterval RealInterval::from_long(long v, mpfr_prec_t prec) {
  RealInterval out(prec);
  mpfr_set_si(out.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(out.hi_.get(), v, MPFR_RNDU);
  return out;
}

RealInterval RealInterval::from_int(const BigInt& v, mpfr_prec_t prec) {
  RealInterval out(prec);
  mpfr_set_z(out.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return out;
}

RealInterval RealInterval::from_rational(const Rational& v, mpfr_prec_t prec) {
  RealInterval out(prec);
  mpfr_set_q(out.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
  return out;
}

RealInterval RealInterval::from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (lo > hi) throw InvalidArgument("interval bounds out of order");
  RealInterval out(prec);
  mpfr_set_q(out.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

RealInterval RealInterval::from_double(double v, mpfr_prec_t prec) {
  return hull_of_doubles(v, v, prec);
}

RealInterval RealInterval::hull_of_doubles(double lo, double hi, mpfr_prec_t prec) {
  if (!(lo <= hi)) throw InvalidArgument("interval bounds out of order");
  RealInterval out(prec);
  mpfr_set_d(out.lo_.get(), lo, MPFR_RNDD);
  mpfr_set_d(out.hi_.get(), hi, MPFR_RNDU);
  return out;
}

RealInterval RealInterval::log2(mpfr_prec_t prec) {
  RealInterval out(prec);
  mpfr_const_log2(out.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(out.hi_.get(), MPFR_RNDU);
  return out;
}

RealInterval RealInterval::from_endpoints(const BigFloat& lo, const BigFloat& hi,
                                          mpfr_prec_t prec) {
  RealInterval out(prec);
  mpfr_set(out.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(out.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_greater_p(out.lo_.get(), out.hi_.get())) {
    throw InvalidArgument("interval bounds out of order");
  }
  return out;
}

RealInterval RealInterval::exp_of(long k, mpfr_prec_t prec) {
  return exp(from_long(k, prec));
}

double RealInterval::mid() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double(MPFR_RNDN);
}

double RealInterval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

bool RealInterval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool RealInterval::contains(const RealInterval& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), other.hi_.get());
}

bool RealInterval::certainly_less(const RealInterval& other) const {
  return mpfr_less_p(hi_.get(), other.lo_.get());
}

bool RealInterval::certainly_less(const Rational& q) const {
  return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0;
}

bool RealInterval::certainly_greater(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0;
}

bool RealInterval::certainly_less_equal(const Rational& q) const {
  return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) <= 0;
}

bool RealInterval::certainly_greater_equal(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) >= 0;
}

RealInterval RealInterval::hull(const RealInterval& other) const {
  RealInterval out(joint_precision(*this, other));
  mpfr_min(out.lo_.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return out;
}

RealInterval& RealInterval::operator+=(const RealInterval& rhs) {
  mpfr_add(lo_.get(), lo_.get(), rhs.lo_.get(), MPFR_RNDD);
  mpfr_add(hi_.get(), hi_.get(), rhs.hi_.get(), MPFR_RNDU);
  return *this;
}

RealInterval& RealInterval::operator-=(const RealInterval& rhs) {
  // lo - rhs.hi, hi - rhs.lo; a temporary keeps self-subtraction correct.
  BigFloat new_lo(precision());
  mpfr_sub(new_lo.get(), lo_.get(), rhs.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi_.get(), hi_.get(), rhs.lo_.get(), MPFR_RNDU);
  lo_ = std::move(new_lo);
  return *this;
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  RealInterval out(joint_precision(a, b));
  mpfr_add(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return out;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  RealInterval out(joint_precision(a, b));
  mpfr_sub(out.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(out.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return out;
}

RealInterval operator-(const RealInterval& a) {
  RealInterval out(a.precision());
  mpfr_neg(out.lo_.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), a.lo_.get(), MPFR_RNDU);
  return out;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  const mpfr_prec_t prec = joint_precision(a, b);
  RealInterval out(prec);
  if (a.is_nonnegative() && b.is_nonnegative()) {
    mpfr_mul(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_mul(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
  }
  mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
  BigFloat t(prec);
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (mpfr_nan_p(t.get())) mpfr_set_inf(t.get(), -1);
      if (first || mpfr_less_p(t.get(), out.lo_.get())) mpfr_set(out.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (mpfr_nan_p(t.get())) mpfr_set_inf(t.get(), 1);
      if (first || mpfr_greater_p(t.get(), out.hi_.get())) {
        mpfr_set(out.hi_.get(), t.get(), MPFR_RNDU);
      }
      first = false;
    }
  }
  return out;
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
    throw InvalidArgument("interval division by an interval containing 0");
  }
  const mpfr_prec_t prec = joint_precision(a, b);
  RealInterval out(prec);
  if (a.is_nonnegative() && b.is_positive()) {
    mpfr_div(out.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_div(out.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return out;
  }
  RealInterval inv(prec);
  mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * inv;
}

RealInterval log(const RealInterval& x) {
  if (mpfr_sgn(x.lo_.get()) < 0) throw InvalidArgument("log of an interval with negative part");
  RealInterval out(x.precision());
  if (mpfr_equal_p(x.lo_.get(), x.hi_.get())) {
    // Point argument: one directed rounding, then step up unless exact.
    const int t = mpfr_log(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_set(out.hi_.get(), out.lo_.get(), MPFR_RNDN);
    if (t != 0) mpfr_nextabove(out.hi_.get());
    return out;
  }
  mpfr_log(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

RealInterval exp(const RealInterval& x) {
  RealInterval out(x.precision());
  if (mpfr_equal_p(x.lo_.get(), x.hi_.get())) {
    const int t = mpfr_exp(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_set(out.hi_.get(), out.lo_.get(), MPFR_RNDN);
    if (t != 0) mpfr_nextabove(out.hi_.get());
    return out;
  }
  mpfr_exp(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

RealInterval pow(const RealInterval& x, const RealInterval& y) {
  if (!x.is_positive()) throw InvalidArgument("pow of a non-positive interval");
  return exp(y * log(x));
}

std::string RealInterval::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lower(), upper());
  return buf;
}

RationalInterval RationalInterval::ordered(Rational a, Rational b) {
  if (a <= b) return {std::move(a), std::move(b)};
  return {std::move(b), std::move(a)};
}

}  // namespace cflab
