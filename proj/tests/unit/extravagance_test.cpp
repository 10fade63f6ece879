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
#include <random>

#include "cflab/error.hpp"
#include "cflab/extravagance/process.hpp"
#include "cflab/extravagance/trace.hpp"
#include "cflab/measures/sampler_spec.hpp"

namespace cflab {
namespace {

std::vector<Rational> geometric(const Rational& rho, std::size_t n) {
  std::vector<Rational> xs;
  Rational x = rho;
  for (std::size_t k = 0; k < n; ++k, x *= rho) xs.push_back(x);
  return xs;
}

std::vector<Rational> random_sequence(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> xs;
  for (std::size_t k = 0; k < n; ++k) {
    xs.push_back(make_rational(BigInt(static_cast<unsigned long>(rng() % 1000)),
                               BigInt(static_cast<unsigned long>(1 + rng() % 7))));
  }
  return xs;
}

TEST(Trace, AllZerosIsEmpty) {
  const ExtravaganceTrace t = sequence_extravagance(std::vector<Rational>(50, Rational(0)), 50);
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(t.start_index, 0u);
  EXPECT_EQ(t.estimate(), 0.0);
  EXPECT_EQ(t.tail_estimate(), 0.0);
}

TEST(Trace, ConstantSequence) {
  const std::size_t n = 100;
  const ExtravaganceTrace t = sequence_extravagance(std::vector<Rational>(n, Rational(1)), n);
  ASSERT_EQ(t.start_index, 1u);
  ASSERT_EQ(t.count, n - 1);
  for (std::size_t k = 1; k < n; ++k) EXPECT_TRUE(t.ratio(k).contains(1.0 / k)) << k;
  EXPECT_EQ(t.final_sup.lo, 1.0);
  EXPECT_EQ(t.argmax, 1u);
  EXPECT_LE(t.tail_max.hi, 2.0 / n + 1e-15);
}

TEST(Trace, GeometricRhoTwo) {
  const ExtravaganceTrace t = sequence_extravagance(geometric(Rational(2), 201), 201);
  EXPECT_LT(std::abs(t.ratio(200).mid() - 1.0), 1e-10);
}

TEST(Trace, GeometricClosedForm) {
  // M_n = rho^n (rho - 1) / (rho^n - 1).
  for (const Rational rho : {Rational(3, 2), Rational(2), Rational(3)}) {
    const std::size_t horizon = 101;
    const ExtravaganceTrace t = sequence_extravagance(geometric(rho, horizon), horizon);
    for (std::size_t n = 1; n < horizon; ++n) {
      const Rational rn = pow(rho, n);
      const Rational exact = rn * (rho - 1) / (rn - 1);
      const RatioBound b = t.ratio(n);
      EXPECT_LE(b.lo, exact.get_d());
      EXPECT_GE(b.hi, exact.get_d());
    }
    const double limit = Rational(rho - 1).get_d();
    EXPECT_LT(std::abs(t.ratio(100).mid() - limit), std::pow(rho.get_d(), -50.0));
  }
}

TEST(Trace, ScalingInvariance) {
  const auto xs = random_sequence(1, 300);
  for (const Rational c : {Rational(3), Rational(1, 7), Rational(1000003, 17)}) {
    std::vector<Rational> ys;
    for (const auto& x : xs) ys.push_back(c * x);
    const ExtravaganceTrace a = sequence_extravagance(xs, xs.size());
    const ExtravaganceTrace b = sequence_extravagance(ys, ys.size());
    ASSERT_EQ(a.count, b.count);
    for (std::size_t i = 0; i < a.count; ++i) {
      EXPECT_EQ(a.ratios[i].lo, b.ratios[i].lo);
      EXPECT_EQ(a.ratios[i].hi, b.ratios[i].hi);
    }
  }
}

TEST(Trace, DroppingPrefixNeverDecreasesLaterRatios) {
  const auto xs = random_sequence(2, 200);
  const ExtravaganceTrace full = sequence_extravagance(xs, xs.size());
  for (std::size_t drop : {1u, 5u, 50u}) {
    const std::vector<Rational> tail(xs.begin() + drop, xs.end());
    const ExtravaganceTrace t = sequence_extravagance(tail, tail.size());
    // x_{n+1} of the full sequence is x_{n+1-drop} of the tail.
    for (std::size_t n = std::max(full.start_index, t.start_index + drop); n < xs.size(); ++n) {
      EXPECT_GE(t.ratio(n - drop).hi, full.ratio(n).lo) << drop << " " << n;
    }
  }
}

TEST(Trace, AppendingZerosKeepsSup) {
  auto xs = random_sequence(3, 100);
  const ExtravaganceTrace a = sequence_extravagance(xs, xs.size());
  xs.resize(300, Rational(0));
  const ExtravaganceTrace b = sequence_extravagance(xs, xs.size());
  EXPECT_EQ(a.final_sup.lo, b.final_sup.lo);
  EXPECT_EQ(a.final_sup.hi, b.final_sup.hi);
  for (std::size_t n = 100; n < 300; ++n) EXPECT_EQ(b.ratio(n).hi, 0.0);
}

TEST(Trace, RunningSupMonotoneAndDominatesRatios) {
  const auto xs = random_sequence(4, 500);
  const ExtravaganceTrace t = sequence_extravagance(xs, xs.size());
  for (std::size_t i = 1; i < t.count; ++i) {
    EXPECT_GE(t.running_sup[i].lo, t.running_sup[i - 1].lo);
    EXPECT_GE(t.running_sup[i].hi, t.ratios[i].hi);
  }
  EXPECT_LE(t.tail_max.lo, t.final_sup.hi);
}

TEST(Trace, NegativeInputRejected) {
  ExtravaganceMeter m(10);
  m.push(Value::integer(BigInt(1)));
  EXPECT_THROW(m.push(Value::integer(BigInt(-1))), InvalidArgument);
  ExtravaganceMeter full(1);
  full.push(Value::integer(BigInt(1)));
  EXPECT_TRUE(full.done());
  EXPECT_THROW(full.push(Value::integer(BigInt(1))), InvalidArgument);
}

TEST(Trace, RealValuedInputsEnclose) {
  std::vector<Value> xs;
  for (long k = 2; k < 60; ++k) xs.push_back(Value::real(log(RealInterval::from_long(k))));
  const ExtravaganceTrace t = sequence_extravagance(xs, xs.size());
  double s = 0;
  for (std::size_t n = 1; n < xs.size(); ++n) {
    s += std::log(static_cast<double>(n + 1));
    const double m = std::log(static_cast<double>(n + 2)) / s;
    EXPECT_NEAR(t.ratio(n).mid(), m, 1e-12);
    EXPECT_GT(t.ratio(n).width(), 0.0);
  }
}

TEST(Process, BoundedDigitsDecay) {
  const auto r = process_extravagance(SamplerSpec::parse_text("uniform:1..3"), 100000, 4, 2026);
  EXPECT_EQ(r.replicas.size(), 4u);
  EXPECT_LT(r.summary.tail_max.max, 0.01);
}

TEST(Process, ParallelMatchesSerial) {
  const SamplerSpec s = SamplerSpec::parse_text("power:3");
  const auto a = process_extravagance(s, 5000, 8, 7, 1, true);
  const auto b = process_extravagance(s, 5000, 8, 7, 4, true);
  EXPECT_EQ(a.to_json(true).dump(), b.to_json(true).dump());
}

TEST(Process, ReplicaSeedsAreDerived) {
  const auto r = process_extravagance(SamplerSpec::parse_text("lebesgue@log"), 100, 3, 11);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.replicas[i].seed, derive_seed(11, i));
}

TEST(Perturbation, GeometricGrowthPlusOne) {
  const auto r = perturbation_check(SamplerSpec::parse_text("growth:2"),
                                    SamplerSpec::parse_text("constant:1"), 200, 1, 3);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_NEAR(r.pairs[0].base.tail_estimate(), 1.0, 1e-10);
  EXPECT_NEAR(r.pairs[0].perturbed.tail_estimate(), 1.0, 1e-6);
  EXPECT_LT(std::abs(r.pairs[0].tail_difference()), 1e-6);
}

TEST(Perturbation, ZeroBasePlusOne) {
  const std::size_t n = 1000;
  const auto r = perturbation_check(SamplerSpec::parse_text("constant:0"),
                                    SamplerSpec::parse_text("constant:1"), n, 1, 3);
  EXPECT_EQ(r.pairs[0].base.tail_estimate(), 0.0);
  EXPECT_LE(r.pairs[0].perturbed.tail_estimate(), 4.0 / n);
}

TEST(Perturbation, InfiniteMeanRejected) {
  EXPECT_THROW(perturbation_check(SamplerSpec::parse_text("power:3"),
                                  SamplerSpec::parse_text("geometric"), 100, 1, 3),
               ConfigError);
}

TEST(Quantiles, Interpolation) {
  const Quantiles q = Quantiles::of({4, 1, 3, 2, 5});
  EXPECT_EQ(q.min, 1);
  EXPECT_EQ(q.median, 3);
  EXPECT_EQ(q.max, 5);
  EXPECT_DOUBLE_EQ(q.q25, 2);
  EXPECT_DOUBLE_EQ(q.q10, 1.4);
}

}  // namespace
}  // namespace cflab
