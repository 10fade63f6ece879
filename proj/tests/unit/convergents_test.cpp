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


#include "cflab/cf/convergents.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cflab/cf/cylinder.hpp"
#include "cflab/cf/digit_stream.hpp"
#include "cflab/error.hpp"
#include "cflab/measures/lebesgue.hpp"
#include "cflab/measures/sampler_spec.hpp"

namespace cflab {
namespace {

DigitStream golden() { return make_digit_stream(SamplerSpec::parse_text("golden"), 0); }

std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// [0; a_1, ..., a_n] by nested division, independent of the recurrence.
Rational nested(const std::vector<BigInt>& a, std::size_t n) {
  Rational t(0);
  for (std::size_t i = n; i-- > 0;) t = Rational(1) / (Rational(a[i]) + t);
  return t;
}

TEST(Convergents, GoldenDenominatorsAreFibonacci) {
  DigitStream g = golden();
  ConvergentState s = ConvergentState::initial();
  BigInt f0 = 1, f1 = 1;  // F_1, F_2
  for (std::size_t n = 1; n <= 90; ++n) {
    advance_in_place(s, g.digit(n));
    EXPECT_EQ(s.q_cur, f1) << n;
    EXPECT_EQ(s.p_cur, f0) << n;
    const BigInt f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
}

TEST(Convergents, ThreeSevenExample) {
  ConvergentState s = ConvergentState::initial();
  s = advance_convergent(s, BigInt(3));
  EXPECT_EQ(s.value(), Rational(1, 3));
  s = advance_convergent(s, BigInt(7));
  EXPECT_EQ(s.p_cur, 7);
  EXPECT_EQ(s.q_cur, 22);
  EXPECT_THROW(advance_convergent(s, BigInt(0)), InvalidArgument);
}

TEST(Convergents, PiPrefixAgainstNestedDivision) {
  const auto a = ints({3, 7, 15, 1});
  const std::vector<Rational> expected{Rational(1, 3), Rational(7, 22), Rational(106, 333),
                                       Rational(113, 355)};
  ConvergentState s = ConvergentState::initial();
  for (std::size_t n = 1; n <= a.size(); ++n) {
    advance_in_place(s, a[n - 1]);
    EXPECT_EQ(s.value(), expected[n - 1]);
    EXPECT_EQ(s.value(), nested(a, n));
  }
  EXPECT_EQ(evaluate_finite(a), Rational(113, 355));
}

TEST(Convergents, DeterminantGcdAndGrowth) {
  DigitStream d = lebesgue_digits(11);
  ConvergentState s = ConvergentState::initial();
  EXPECT_EQ(s.determinant(), -1);
  for (std::size_t n = 1; n <= 400; ++n) {
    advance_in_place(s, d.digit(n));
    EXPECT_EQ(s.determinant(), (n % 2 == 1) ? 1 : -1) << n;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), s.p_cur.get_mpz_t(), s.q_cur.get_mpz_t());
    EXPECT_EQ(g, 1);
    // q_n >= 2^{(n-1)/2}
    EXPECT_GE(bit_length(s.q_cur), (n - 1) / 2 + 1) << n;
  }
}

TEST(Evaluate, GoldenN3) {
  DigitStream g = golden();
  const RationalInterval r = evaluate(g, 3);
  EXPECT_EQ(r.lo, Rational(3, 5));
  EXPECT_EQ(r.hi, Rational(2, 3));
}

TEST(Evaluate, WidthAndNesting) {
  DigitStream d = lebesgue_digits(5);
  RationalInterval prev = evaluate(d, 1);
  for (std::size_t n = 1; n <= 200; ++n) {
    const RationalInterval r = evaluate(d, n);
    const ConvergentState a = convergent_at(d, n);
    const ConvergentState b = convergent_at(d, n + 1);
    EXPECT_EQ(r.width(), Rational(1) / Rational(a.q_cur * b.q_cur)) << n;
    EXPECT_TRUE(prev.contains(r)) << n;
    prev = r;
  }
}

TEST(Evaluate, FiniteStreamExhausts) {
  DigitStream d = DigitStream::finite(ints({3, 7}));
  EXPECT_NO_THROW(evaluate(d, 1));
  EXPECT_THROW(evaluate(d, 2), StreamExhausted);
  EXPECT_THROW(d.digit(3), StreamExhausted);
  EXPECT_EQ(d.known_length(), std::optional<std::size_t>(2));
}

TEST(Expand, Examples) {
  EXPECT_EQ(expand_rational(Rational(7, 22)), ints({3, 7}));
  EXPECT_EQ(expand_rational(Rational(1, 2)), ints({2}));
  EXPECT_EQ(expand_rational(Rational(113, 355)), ints({3, 7, 16}));
  EXPECT_THROW(expand_rational(Rational(0)), InvalidArgument);
  EXPECT_THROW(expand_rational(Rational(1)), InvalidArgument);
  EXPECT_THROW(expand_rational(Rational(3, 2)), InvalidArgument);
  EXPECT_EQ(canonicalize(ints({3, 7, 15, 1})), ints({3, 7, 16}));
  EXPECT_EQ(canonicalize(ints({1})), ints({1}));
}

TEST(Expand, RoundTripRandomRationals) {
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 1000; ++i) {
    BigInt q = BigInt(static_cast<unsigned long>(rng() >> 1)) * BigInt(1 + (rng() % 1000)) + 2;
    BigInt p = BigInt(static_cast<unsigned long>(rng() >> 1)) % (q - 1) + 1;
    const Rational x = make_rational(p, q);
    const auto a = expand_rational(Rational(x));
    ASSERT_FALSE(a.empty());
    EXPECT_NE(a.back(), 1);
    EXPECT_EQ(evaluate_finite(a), Rational(x));
    EXPECT_EQ(nested(a, a.size()), Rational(x));
  }
}

TEST(GaussTail, GoldenFixedPoint) {
  DigitStream g = golden();
  // G x = x for x = (sqrt 5 - 1)/2, the root of y^2 + y - 1.
  for (std::size_t n : {0u, 1u, 5u}) {
    const RationalInterval t = gauss_tail(g, n, 30);
    EXPECT_LT(t.lo * t.lo + t.lo - 1, 0);
    EXPECT_GT(t.hi * t.hi + t.hi - 1, 0);
  }
}

TEST(GaussTail, PeriodTwoQuadraticOracle) {
  // x = [0; 3, 2, 3, 2, ...] is the positive root of 3y^2 + 6y - 2.
  DigitStream d = make_digit_stream(SamplerSpec::parse_text("periodic:3,2"), 0);
  for (std::size_t n : {0u, 2u, 10u}) {
    const RationalInterval t = gauss_tail(d, n, 24);
    EXPECT_LT(3 * t.lo * t.lo + 6 * t.lo - 2, 0) << n;
    EXPECT_GT(3 * t.hi * t.hi + 6 * t.hi - 2, 0) << n;
  }
  // Odd shifts give [0; 2, 3, ...], the root of 2z^2 + 6z - 3.
  const RationalInterval z = gauss_tail(d, 1, 24);
  EXPECT_LT(2 * z.lo * z.lo + 6 * z.lo - 3, 0);
  EXPECT_GT(2 * z.hi * z.hi + 6 * z.hi - 3, 0);
}

TEST(GaussTail, BackwardPassAgreesWithForward) {
  DigitStream d = lebesgue_digits(42);
  const auto tails = gauss_tails(d, 100);
  ASSERT_EQ(tails.size(), 100u);
  for (std::size_t k = 0; k < tails.size(); ++k) {
    const RationalInterval t = gauss_tail(d, k, 40);
    EXPECT_LE(tails[k].lower(), t.hi.get_d() + 1e-15) << k;
    EXPECT_GE(tails[k].upper(), t.lo.get_d() - 1e-15) << k;
    EXPECT_TRUE(tails[k].is_positive());
  }
  const auto logs = log_inverse_tails(d, 100);
  for (std::size_t k = 0; k < logs.size(); ++k) {
    EXPECT_NEAR(logs[k].mid(), -std::log(tails[k].mid()), 1e-12) << k;
  }
}

TEST(GaussTail, GoldenLogInverseTail) {
  DigitStream g = golden();
  for (const auto& l : log_inverse_tails(g, 50)) {
    EXPECT_NEAR(l.mid(), std::log((1 + std::sqrt(5.0)) / 2), 1e-14);
  }
}

TEST(ApproximationRatio, AlwaysInsideForLebesguePoints) {
  DigitStream d = lebesgue_digits(3);
  for (std::size_t n = 1; n <= 300; ++n) {
    const ApproximationRatio r = approximation_ratio(d, n);
    EXPECT_EQ(r.decision, Decision::kInside) << n;
    EXPECT_GE(r.ratio.lo, Rational(1, 2));
    EXPECT_LE(r.ratio.hi, Rational(1));
  }
}

TEST(DenominatorDeviation, BoundedByLog2) {
  DigitStream d = lebesgue_digits(8);
  const double log2 = std::log(2.0);
  for (const auto& dev : denominator_deviation(d, 500)) {
    EXPECT_GE(dev.lower(), -log2 - 1e-9);
    EXPECT_LE(dev.upper(), 1e-9);
  }
}

TEST(Cylinder, LengthOneAndTwo) {
  const CylinderId one{ints({1})};
  const RationalInterval i1 = cylinder_interval(one);
  EXPECT_EQ(i1.lo, Rational(1, 2));
  EXPECT_EQ(i1.hi, Rational(1));
  EXPECT_EQ(cylinder_length(one), Rational(1, 2));
  EXPECT_EQ(cylinder_length(CylinderId{ints({2})}), Rational(1, 6));
  EXPECT_THROW(CylinderId{}.validate(), InvalidArgument);
  EXPECT_THROW((CylinderId{ints({2, 0})}.validate()), InvalidArgument);
}

TEST(Cylinder, LengthTimesQSquaredAndDistortion) {
  const auto all = enumerate_cylinders(4, 6);
  EXPECT_EQ(all.size(), 6u + 36u + 216u + 1296u);
  for (const auto& c : all) {
    ConvergentState s = ConvergentState::initial();
    for (const auto& a : c.prefix) advance_in_place(s, a);
    const Rational lq2 = cylinder_length(c) * Rational(s.q_cur * s.q_cur);
    EXPECT_GE(lq2, Rational(1, 2)) << c.to_string();
    EXPECT_LE(lq2, Rational(1)) << c.to_string();
    const RationalInterval iv = cylinder_interval(c);
    EXPECT_EQ(iv.width(), cylinder_length(c));
    // Points of the cylinder expand with the prefix.
    const Rational mid = (iv.lo + iv.hi) / 2;
    const auto a = expand_rational(mid);
    ASSERT_GE(a.size(), c.prefix.size());
    EXPECT_TRUE(std::equal(c.prefix.begin(), c.prefix.end(), a.begin())) << c.to_string();
    const DistortionRatio dr = distortion_ratio(c);
    EXPECT_TRUE(dr.within_bound);
    EXPECT_LE(dr.sup_ratio, Rational(2));
  }
  for (long k = 1; k <= 20; ++k) {
    EXPECT_EQ(distortion_ratio(CylinderId{ints({k})}).sup_ratio, Rational(k + 1, k));
  }
}

TEST(Cylinder, ConcatIsIntersection) {
  const CylinderId a{ints({2, 1})};
  const CylinderId b{ints({3})};
  const CylinderId ab = a.concat(b);
  EXPECT_EQ(ab.prefix, ints({2, 1, 3}));
  EXPECT_TRUE(cylinder_interval(a).contains(cylinder_interval(ab)));
}

TEST(DigitStream, MemoizedReplay) {
  DigitStream d = lebesgue_digits(99);
  const auto first = d.prefix(50);
  for (std::size_t n = 50; n >= 1; --n) EXPECT_EQ(d.digit(n), first[n - 1]);
  DigitStream again = lebesgue_digits(99);
  EXPECT_EQ(again.prefix(50), first);
}

}  // namespace
}  // namespace cflab
