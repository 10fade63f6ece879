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


#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "cflab/cf/convergents.hpp"
#include "cflab/cf/cylinder.hpp"
#include "cflab/dio/approx_function.hpp"
#include "cflab/dio/dichotomy.hpp"
#include "cflab/dio/exponent.hpp"
#include "cflab/dio/khinchin.hpp"
#include "cflab/dio/renyi.hpp"
#include "cflab/dio/series.hpp"
#include "cflab/error.hpp"
#include "cflab/measures/engineered.hpp"
#include "cflab/measures/lebesgue.hpp"
#include "cflab/measures/sampler_spec.hpp"

namespace cflab {
namespace {

DigitStream golden() { return make_digit_stream(SamplerSpec::parse_text("golden"), 0); }

TEST(ApproxFunction, ParseAndEvaluate) {
  const ApproxFunction f = ApproxFunction::parse("1/(q*log(q))");
  EXPECT_NEAR(f.at(BigInt(10)).mid(), 1.0 / (10 * std::log(10.0)), 1e-15);
  EXPECT_TRUE(ApproxFunction::parse("q^-2").at(BigInt(4)).contains(Rational(1, 16)));
  EXPECT_TRUE(ApproxFunction::parse("2*q - 0.5").at(BigInt(3)).contains(Rational(11, 2)));
  EXPECT_NEAR(ApproxFunction::parse("sqrt(q)+exp(1)").at(BigInt(9)).mid(), 3 + std::exp(1.0),
              1e-15);
  EXPECT_NEAR(ApproxFunction::parse("q^-1.1").at(BigInt(7)).mid(), std::pow(7.0, -1.1), 1e-14);
  EXPECT_THROW(ApproxFunction::parse("q^"), ConfigError);
  EXPECT_THROW(ApproxFunction::parse("foo(q)"), ConfigError);
  EXPECT_THROW(ApproxFunction::parse("x"), ConfigError);
  EXPECT_THROW(ApproxFunction::parse("(q"), ConfigError);
}

TEST(ApproxFunction, FamilyAndDomain) {
  const ApproxFunction f = ApproxFunction::log_family(Rational(2));
  EXPECT_EQ(f.family_beta(), std::optional<Rational>(Rational(2)));
  EXPECT_EQ(f.domain_start(), 2u);
  EXPECT_THROW(f.at(BigInt(1)), InvalidArgument);
  EXPECT_NEAR(f.at(BigInt(100)).mid(), 1.0 / (100 * std::pow(std::log(100.0), 2)), 1e-15);
  EXPECT_FALSE(ApproxFunction::parse("1/q").family_beta().has_value());
  EXPECT_EQ(ApproxFunction::parse("1/q^2").domain_start(), 1u);
}

TEST(ApproxFunction, MonotonicityCheck) {
  EXPECT_TRUE(ApproxFunction::log_family(Rational(1)).check_monotone(1000).ok());
  EXPECT_TRUE(ApproxFunction::parse("q^-2").check_monotone(1000, {BigInt(1) << 200}).ok());
  const MonotonicityCheck inc = ApproxFunction::parse("q").check_monotone(100);
  EXPECT_FALSE(inc.non_increasing);
  EXPECT_FALSE(inc.offending.empty());
  const MonotonicityCheck neg = ApproxFunction::parse("1/q - 1/100").check_monotone(200);
  EXPECT_TRUE(neg.non_increasing);
  EXPECT_FALSE(neg.positive);
  EXPECT_EQ(neg.offending, "100");
  EXPECT_THROW(ApproxFunction::parse("0-1/q").check_monotone(100), InvalidArgument);
}

TEST(Khinchin, LegendreCutoff) {
  EXPECT_EQ(legendre_cutoff(ApproxFunction::log_family(Rational(1)), Divisor::unit(), 2, 1000),
            std::optional<std::size_t>(8));
  EXPECT_EQ(legendre_cutoff(ApproxFunction::log_family(Rational(2)), Divisor::unit(), 2, 1000),
            std::optional<std::size_t>(5));
  EXPECT_EQ(legendre_cutoff(ApproxFunction::parse("1/q"), Divisor::unit(), 2, 1000), std::nullopt);
  EXPECT_EQ(legendre_cutoff(ApproxFunction::parse("1/q"), Divisor{Rational(3), 0}, 2, 1000),
            std::optional<std::size_t>(2));
}

// Every reduced p/q with 2 <= q <= q_max and |x - p/q| < f(q)/q, by enumeration.
std::map<std::pair<BigInt, BigInt>, bool> brute_force_hits(const RationalInterval& x,
                                                          const ApproxFunction& f,
                                                          unsigned long q_max) {
  std::map<std::pair<BigInt, BigInt>, bool> out;  // value: decided
  for (unsigned long q = 2; q <= q_max; ++q) {
    const BigInt qb(q);
    const RealInterval thr = f.at(qb, 256) / RealInterval::from_int(qb, 256);
    // Every candidate p lies within q*w of q*x.
    const double w = thr.upper();
    const double qd = static_cast<double>(q);
    const long p_lo = std::max(0L, static_cast<long>(std::floor((x.lo.get_d() - w) * qd)) - 2);
    const long p_hi = std::min(static_cast<long>(q), static_cast<long>(std::ceil((x.hi.get_d() + w) * qd)) + 2);
    for (long p = p_lo; p <= p_hi; ++p) {
      const BigInt pb(p);
      if (gcd(pb, qb) != 1) continue;
      const Rational c(pb, qb);
      const Rational a = abs(Rational(x.lo - c));
      const Rational b = abs(Rational(x.hi - c));
      const Rational lo = std::min(a, b);
      const Rational hi = std::max(a, b);
      if (thr.certainly_greater(hi)) {
        out[{pb, qb}] = true;
      } else if (!thr.certainly_greater_equal(lo)) {
        continue;  // certainly a miss
      } else {
        out[{pb, qb}] = false;
      }
    }
  }
  return out;
}

TEST(Khinchin, MatchesBruteForceEnumeration) {
  const ApproxFunction f = ApproxFunction::log_family(Rational(1));
  const std::size_t horizon = 30;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    DigitStream d = lebesgue_digits(seed);
    KhinchinOptions opt;
    const auto cut = legendre_cutoff(f, opt.divisor, opt.q_min, 4096);
    const KhinchinReplica r = khinchin_count(d, f, horizon, opt, cut);
    const BigInt q_n = convergent_at(d, horizon).q_cur;
    const unsigned long q_max = q_n < 20000 ? q_n.get_ui() : 20000;
    const auto oracle = brute_force_hits(evaluate(d, horizon + 40), f, q_max);
    std::size_t expected = 0;
    for (const auto& [pq, decided] : oracle) {
      if (!decided) continue;
      ++expected;
      const bool found = std::any_of(r.hits.begin(), r.hits.end(), [&](const KhinchinHit& h) {
        return h.p == pq.first && h.q == pq.second;
      });
      EXPECT_TRUE(found) << "seed " << seed << " missing " << pq.first << "/" << pq.second;
    }
    std::size_t reported = 0;
    for (const auto& h : r.hits) {
      if (h.q > q_max) continue;
      ++reported;
      EXPECT_TRUE(oracle.count({h.p, h.q})) << "seed " << seed << " spurious " << h.p << "/" << h.q;
      if (h.q >= *cut) EXPECT_TRUE(h.convergent);
    }
    EXPECT_EQ(reported, expected) << seed;
  }
}

TEST(Khinchin, GoldenHasNoLateHits) {
  DigitStream g = golden();
  // Threshold f(q)/q = 1/(2 q^2.1); golden gaps are close to 1/(sqrt(5) q^2).
  const ApproxFunction f = ApproxFunction::parse("1/(2*q^1.1)");
  KhinchinOptions opt;
  const auto cut = legendre_cutoff(f, opt.divisor, opt.q_min, 4096);
  ASSERT_EQ(cut, std::optional<std::size_t>(2));
  const KhinchinReplica r = khinchin_count(g, f, 80, opt, cut);
  for (const auto& h : r.hits) EXPECT_LT(h.q, 10) << h.q;
  EXPECT_EQ(r.undecided, 0u);
  EXPECT_TRUE(r.plateau());
}

TEST(Khinchin, IncreasingScaledFunctionRejected) {
  EXPECT_THROW(khinchin_experiment(SamplerSpec::parse_text("lebesgue"), ApproxFunction::parse("q"),
                                   20, 1, 1),
               ConfigError);
  EXPECT_THROW(khinchin_experiment(SamplerSpec::parse_text("growth:2"),
                                   ApproxFunction::log_family(Rational(1)), 20, 1, 1),
               ConfigError);
}

TEST(Khinchin, ExperimentIsDeterministic) {
  const SamplerSpec s = SamplerSpec::parse_text("lebesgue");
  const ApproxFunction f = ApproxFunction::log_family(Rational(1));
  const auto a = khinchin_experiment(s, f, 500, 6, 9, 1);
  const auto b = khinchin_experiment(s, f, 500, 6, 9, 3);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.undecided_total, 0u);
}

TEST(Series, LebesgueBaselZeta) {
  const SeriesReport r =
      series_partial_sums(MuCdf::lebesgue(), ApproxFunction::parse("n^-2"), 10000, {100, 1000});
  ASSERT_EQ(r.sums.size(), 3u);
  EXPECT_LT(std::abs(r.total().mid() - std::numbers::pi * std::numbers::pi / 6), 1e-4);
  double direct = 0;
  for (int n = 1; n <= 100; ++n) direct += 1.0 / (static_cast<double>(n) * n);
  EXPECT_NEAR(r.sums[0].mid(), direct, 1e-12);
}

TEST(Series, GaussBetaTwoStaysBounded) {
  const SeriesReport r =
      series_partial_sums(MuCdf::gauss(), ApproxFunction::log_family(Rational(2)), 1000000,
                          {10, 100, 1000, 10000, 100000});
  for (const auto& s : r.sums) EXPECT_LT(s.upper(), 10.0);
  EXPECT_FALSE(r.declared_convergent.has_value());
}

TEST(Series, GaussBetaOneKeepsGrowing) {
  const SeriesReport r = series_partial_sums(
      MuCdf::gauss(), ApproxFunction::log_family(Rational(1)), 1000000, {1000});
  EXPECT_GT(r.total().lower() - r.sums[0].upper(), 0.5);
}

TEST(Series, CdfChecks) {
  EXPECT_THROW(MuCdf("bad", [](const RealInterval& t) { return t + RealInterval::from_long(1); }),
               InvalidArgument);
  const MuCdf bumpy("bumpy", [](const RealInterval& t) {
    if (t.is_zero()) return t;
    if (t.upper() < 0.3) return RealInterval::from_rational(Rational(1, 2));
    return t;
  });
  EXPECT_THROW(series_partial_sums(bumpy, ApproxFunction::parse("n^-2"), 10), InvalidArgument);
  const MuCdf law = MuCdf::digit_law(make_power_tail_law(Rational(3)));
  // mu((0, 1/4)) = P(a >= 4) = 1/16 lies in the enclosure.
  EXPECT_TRUE(law(RealInterval::from_rational(Rational(1, 4))).contains(Rational(1, 16)));
}

TEST(Condensation, FiniteLogMeanAgrees) {
  const CondensationReport r = condensation_equivalence_check(
      make_power_tail_law(Rational(3)), {Rational(1, 2), Rational(1), Rational(2)}, 10000);
  EXPECT_FALSE(r.log_mean.growing);
  EXPECT_TRUE(r.agree);
  for (const auto& row : r.rows) EXPECT_FALSE(row.series.growing);
  EXPECT_THROW(condensation_equivalence_check(make_power_tail_law(Rational(3)), {Rational(0)}, 100),
               InvalidArgument);
  EXPECT_THROW(condensation_equivalence_check(make_power_tail_law(Rational(3)), {Rational(1)}, 8),
               InvalidArgument);
}

TEST(Condensation, Classifier) {
  EXPECT_TRUE(classify_growing(1.0, 0.75));
  EXPECT_TRUE(classify_growing(1.0, 1.2));
  EXPECT_FALSE(classify_growing(1.0, 0.74));
}

TEST(Renyi, SingleDigitPair) {
  const RenyiCheckReport r = renyi_cylinder_check(1, 1, 1);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].ratio, Rational(2, 3));
  EXPECT_TRUE(r.within_bound);
}

TEST(Renyi, RatiosAgainstCylinderLengths) {
  const RenyiCheckReport r = renyi_cylinder_check(2, 4, 2);
  EXPECT_EQ(r.pairs.size(), 20u * 20u);
  for (const auto& p : r.pairs) {
    const Rational expected =
        cylinder_length(p.a.concat(p.b)) / (cylinder_length(p.a) * cylinder_length(p.b));
    EXPECT_EQ(p.ratio, expected);
    EXPECT_GE(p.ratio, r.min_ratio);
    EXPECT_LE(p.ratio, r.max_ratio);
  }
  EXPECT_TRUE(r.within_bound);
}

TEST(Renyi, ProductMeasureRatioIsOne) {
  const RenyiCheckReport r = renyi_product_check(make_uniform_law(1, 5), 2, 5);
  EXPECT_EQ(r.max_ratio, 1);
  EXPECT_EQ(r.min_ratio, 1);
  EXPECT_THROW(renyi_product_check(make_power_tail_law(Rational(3)), 2, 5), InvalidArgument);
}

TEST(Exponent, GoldenIsTwo) {
  DigitStream g = golden();
  const ExponentEstimate e = estimate_exponent(g, 1000);
  EXPECT_NEAR(e.bugeaud.estimate, 2.0, 0.05);
  EXPECT_NEAR(e.digit.estimate, 2.0, 0.05);
  EXPECT_NEAR(e.direct_point.estimate, 2.0, 0.05);
  EXPECT_TRUE(e.consistent);
  EXPECT_EQ(e.route_violations, 0u);
  EXPECT_EQ(e.dirichlet_violations, 0u);
}

TEST(Exponent, EngineeredRateOne) {
  DigitStream d = engineered_digits(Rational(1));
  const ExponentEstimate e = estimate_exponent(d, 30);
  EXPECT_GE(e.digit.estimate, 2.9);
  EXPECT_LE(e.digit.estimate, 3.1);
}

TEST(Exponent, LebesgueMedianNearTwo) {
  const ExponentExperiment x =
      exponent_experiment(SamplerSpec::parse_text("lebesgue"), 1000, 100, 2026, 0);
  EXPECT_GE(x.bugeaud.median, 2.0);
  EXPECT_LE(x.bugeaud.median, 2.1);
  for (const auto& r : x.replicas) {
    EXPECT_EQ(r.estimate.route_violations, 0u) << r.replica;
    EXPECT_EQ(r.estimate.dirichlet_violations, 0u) << r.replica;
    EXPECT_GT(r.estimate.route_checked, 0u);
  }
}

TEST(Exponent, InputChecks) {
  DigitStream g = golden();
  EXPECT_THROW(estimate_exponent(g, 1), InvalidArgument);
  DigitStream f = make_digit_stream(SamplerSpec::parse_text("finite:3,7,15"), 0);
  EXPECT_THROW(estimate_exponent(f, 10), StreamExhausted);
  EXPECT_THROW(exponent_experiment(SamplerSpec::parse_text("constant:1"), 10, 1, 0), ConfigError);
}

TEST(Dichotomy, SmallRun) {
  std::vector<DichotomyCase> cases;
  cases.push_back({SamplerSpec::parse_text("uniform:1..10"), std::nullopt, 0});
  cases.push_back({SamplerSpec::parse_text("geometric"), std::nullopt, 0});
  const DichotomyReport r = dichotomy_experiment(cases, 10000, 4, 5);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].predicted, "0");
  EXPECT_EQ(r.rows[1].predicted, "infinity");
  EXPECT_TRUE(r.rows[0].mean_finite);
  EXPECT_FALSE(r.rows[1].mean_finite);
  EXPECT_EQ(r.rows[0].passing, 4u);
  EXPECT_EQ(r.to_json()["finite_tail_threshold"], 0.02);

  std::vector<DichotomyCase> unknown;
  unknown.push_back({SamplerSpec::parse_text("skyscraper:2"), std::nullopt, 0});
  EXPECT_THROW(dichotomy_experiment(unknown, 100, 1, 5), ConfigError);
}

}  // namespace
}  // namespace cflab
