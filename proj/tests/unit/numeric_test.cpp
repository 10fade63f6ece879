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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cflab/error.hpp"

namespace cflab {
namespace {

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("7/22"), Rational(7, 22));
  EXPECT_EQ(parse_rational("14/44"), Rational(7, 22));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("2.5"), Rational(5, 2));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("abc"), InvalidArgument);
  EXPECT_THROW(parse_rational(""), InvalidArgument);
}

TEST(Rational, ToString) {
  EXPECT_EQ(to_string(make_rational(BigInt(6), BigInt(4))), "3/2");
  EXPECT_EQ(to_string(make_rational(BigInt(4), BigInt(2))), "2");
  EXPECT_EQ(to_string(make_rational(BigInt(3), BigInt(-6))), "-1/2");
  EXPECT_THROW(make_rational(BigInt(1), BigInt(0)), InvalidArgument);
  EXPECT_EQ(bit_length(BigInt(0)), 0u);
  EXPECT_EQ(bit_length(BigInt(255)), 8u);
  EXPECT_EQ(bit_length(BigInt(256)), 9u);
  EXPECT_EQ(pow(BigInt(3), 4), BigInt(81));
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
}

TEST(RealInterval, RationalEnclosure) {
  const Rational third(1, 3);
  const RealInterval r = RealInterval::from_rational(third);
  EXPECT_TRUE(r.contains(third));
  EXPECT_FALSE(r.is_zero());
  EXPECT_LT(r.width(), 1e-30);
  EXPECT_TRUE(RealInterval::from_rational(Rational(1, 4)).contains(Rational(1, 4)));
  EXPECT_EQ(RealInterval::from_rational(Rational(1, 4)).width(), 0.0);
}

TEST(RealInterval, ArithmeticEnclosesExactResult) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    const Rational a(dist(rng), 1 + std::abs(dist(rng)));
    Rational b(dist(rng), 1 + std::abs(dist(rng)));
    if (b == 0) b = 1;
    const RealInterval ra = RealInterval::from_rational(a);
    const RealInterval rb = RealInterval::from_rational(b);
    EXPECT_TRUE((ra + rb).contains(Rational(a + b)));
    EXPECT_TRUE((ra - rb).contains(Rational(a - b)));
    EXPECT_TRUE((ra * rb).contains(Rational(a * b)));
    EXPECT_TRUE((ra / rb).contains(Rational(a / b)));
    EXPECT_TRUE((-ra).contains(Rational(-a)));
  }
}

TEST(RealInterval, DivisionByZeroIntervalThrows) {
  const RealInterval one = RealInterval::from_long(1);
  const RealInterval straddle = RealInterval::from_bounds(Rational(-1), Rational(1));
  EXPECT_THROW(one / straddle, InvalidArgument);
  EXPECT_THROW(one / RealInterval(), InvalidArgument);
}

TEST(RealInterval, LogExpEncloseHighPrecisionValue) {
  // Compare 128-bit enclosures against 1024-bit ones.
  for (long k : {2L, 3L, 10L, 12345L, 1000003L}) {
    const RealInterval lo_prec = log(RealInterval::from_long(k));
    const RealInterval hi_prec = log(RealInterval::from_long(k, 1024));
    EXPECT_LE(mpfr_cmp(lo_prec.lo().get(), hi_prec.lo().get()), 0) << k;
    EXPECT_GE(mpfr_cmp(lo_prec.hi().get(), hi_prec.hi().get()), 0) << k;
    EXPECT_GT(lo_prec.width(), 0.0);
    EXPECT_LT(lo_prec.width(), 1e-30);
  }
  const RealInterval e = exp(RealInterval::from_long(1));
  EXPECT_NEAR(e.mid(), std::exp(1.0), 1e-15);
  EXPECT_TRUE(RealInterval::exp_of(1).contains(e) || e.contains(RealInterval::exp_of(1)));
  EXPECT_TRUE(log(RealInterval::from_long(1)).is_zero());
  EXPECT_TRUE(exp(RealInterval()).contains(Rational(1)));
}

TEST(RealInterval, Log2Constant) {
  const RealInterval l2 = RealInterval::log2();
  EXPECT_TRUE(l2.certainly_greater(Rational(693147, 1000000)));
  EXPECT_TRUE(l2.certainly_less(Rational(693148, 1000000)));
}

TEST(RealInterval, PowMatchesExactSquare) {
  const RealInterval x = RealInterval::from_rational(Rational(3, 2));
  const RealInterval y = RealInterval::from_long(2);
  EXPECT_TRUE(pow(x, y).contains(Rational(9, 4)));
}

TEST(RealInterval, Comparisons) {
  const RealInterval a = RealInterval::from_bounds(Rational(1), Rational(2));
  const RealInterval b = RealInterval::from_bounds(Rational(3), Rational(4));
  const RealInterval c = RealInterval::from_bounds(Rational(2), Rational(3));
  EXPECT_TRUE(a.certainly_less(b));
  EXPECT_FALSE(a.certainly_less(c));
  EXPECT_TRUE(a.certainly_less_equal(Rational(2)));
  EXPECT_FALSE(a.certainly_less(Rational(2)));
  EXPECT_TRUE(b.certainly_greater_equal(Rational(3)));
  EXPECT_TRUE(a.hull(b).contains(c));
}

TEST(RationalInterval, Ordered) {
  const RationalInterval r = RationalInterval::ordered(Rational(2, 3), Rational(3, 5));
  EXPECT_EQ(r.lo, Rational(3, 5));
  EXPECT_EQ(r.hi, Rational(2, 3));
  EXPECT_EQ(r.width(), Rational(1, 15));
  EXPECT_TRUE(r.to_real().contains(Rational(5, 8)));
}

}  // namespace
}  // namespace cflab
