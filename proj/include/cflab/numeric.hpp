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

// Exact integers and rationals (GMP) plus rigorous real enclosures (MPFR with
// directed rounding).  Every RealInterval operation rounds its lower endpoint
// toward -inf and its upper endpoint toward +inf, so the true value of any
// expression built from exact inputs stays inside the computed interval.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>

namespace cflab {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

// Canonical num/den.  Throws InvalidArgument on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts "p/q", integers and plain decimals ("2.5").  Throws InvalidArgument.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

// Number of bits of |z| (0 for z == 0).
std::size_t bit_length(const BigInt& z);

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(value_, rnd); }

 private:
  mpfr_t value_;
};

class RealInterval {
 public:
  // The degenerate interval [0, 0].
  explicit RealInterval(mpfr_prec_t prec = kDefaultPrecision);

  static RealInterval from_long(long v, mpfr_prec_t prec = kDefaultPrecision);
  static RealInterval from_int(const BigInt& v, mpfr_prec_t prec = kDefaultPrecision);
  static RealInterval from_rational(const Rational& v, mpfr_prec_t prec = kDefaultPrecision);
  static RealInterval from_bounds(const Rational& lo, const Rational& hi,
                                  mpfr_prec_t prec = kDefaultPrecision);
  static RealInterval from_double(double v, mpfr_prec_t prec = kDefaultPrecision);
  static RealInterval hull_of_doubles(double lo, double hi, mpfr_prec_t prec = kDefaultPrecision);
  static RealInterval log2(mpfr_prec_t prec = kDefaultPrecision);
  // e^k for integer k.
  static RealInterval exp_of(long k, mpfr_prec_t prec = kDefaultPrecision);
  // [lo, hi] from MPFR endpoints, rounded outward to prec.
  static RealInterval from_endpoints(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return lo_.precision(); }
  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }

  // Endpoints rounded outward to double.
  double lower() const { return lo_.to_double(MPFR_RNDD); }
  double upper() const { return hi_.to_double(MPFR_RNDU); }
  double mid() const;
  double width() const;

  bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool is_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
  bool is_zero() const { return mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get()); }
  bool is_finite() const { return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get()); }
  bool contains(const Rational& q) const;
  bool contains(const RealInterval& other) const;

  // Every point of *this is strictly below every point of other.
  bool certainly_less(const RealInterval& other) const;
  bool certainly_less(const Rational& q) const;
  bool certainly_greater(const Rational& q) const;
  bool certainly_less_equal(const Rational& q) const;
  bool certainly_greater_equal(const Rational& q) const;

  RealInterval hull(const RealInterval& other) const;

  RealInterval& operator+=(const RealInterval& rhs);
  RealInterval& operator-=(const RealInterval& rhs);

  friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a);
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
  // Throws InvalidArgument when b contains 0.
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

  friend RealInterval log(const RealInterval& x);
  friend RealInterval exp(const RealInterval& x);
  // x^y for x > 0, computed as exp(y log x).
  friend RealInterval pow(const RealInterval& x, const RealInterval& y);

  std::string to_string() const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

// Exact rational enclosure [lo, hi] with lo <= hi.
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval ordered(Rational a, Rational b);

  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const RationalInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  RealInterval to_real(mpfr_prec_t prec = kDefaultPrecision) const {
    return RealInterval::from_bounds(lo, hi, prec);
  }
};

}  // namespace cflab
