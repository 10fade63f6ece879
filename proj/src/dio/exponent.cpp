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

#include "cflab/dio/exponent.hpp"

#include <algorithm>
#include <cmath>

#include "cflab/error.hpp"
#include "cflab/measures/rng.hpp"
#include "cflab/parallel.hpp"

namespace cflab {

namespace {

constexpr double kRelativeSlack = 1e-12;

Quantiles quantiles_or_zero(std::vector<double> v) {
  if (v.empty()) return {};
  return Quantiles::of(std::move(v));
}

nlohmann::json route_json(const RoutePoint& r) {
  return {{"estimate", r.estimate}, {"sup_estimate", r.sup_estimate}, {"available", r.available}};
}

}  // namespace

nlohmann::json ExponentEstimate::to_json(bool include_series) const {
  nlohmann::json j = {
      {"horizon", horizon},
      {"bugeaud", route_json(bugeaud)},
      {"digit", route_json(digit)},
      {"direct", route_json(direct_point)},
      {"direct_complete", direct_complete},
      {"direct_count", direct.size()},
      {"tolerance", tolerance},
      {"consistent", consistent},
      {"route_checked", route_checked},
      {"route_violations", route_violations},
      {"dirichlet_violations", dirichlet_violations},
      {"bugeaud_trace", bugeaud_trace.to_json(include_series)},
      {"digit_trace", digit_trace.to_json(include_series)},
  };
  if (include_series) {
    nlohmann::json d = nlohmann::json::array();
    for (std::size_t i = 0; i < direct.size(); ++i) {
      d.push_back({{"n", direct_index[i]}, {"lo", direct[i].lo}, {"hi", direct[i].hi}});
    }
    j["direct_trace"] = std::move(d);
  }
  return j;
}

ExponentEstimate estimate_exponent(DigitStream& digits, std::size_t horizon,
                                   const ExponentOptions& options) {
  if (horizon < 2) throw InvalidArgument("estimate_exponent: horizon must be >= 2");
  if (!digits.has(horizon)) throw StreamExhausted(horizon, digits.produced_count());
  const mpfr_prec_t prec = options.tails.precision;

  std::vector<RealInterval> inv_tails;
  try {
    inv_tails = log_inverse_tails(digits, horizon, options.tails);
  } catch (const UndecidableAtCap& e) {
    throw UndecidableAtCap(std::string("estimate_exponent: tail enclosures: ") + e.what());
  }

  ExponentEstimate out;
  out.horizon = horizon;
  out.tolerance = options.tolerance;
  ExtravaganceMeter tail_meter(horizon, options.record, prec);
  ExtravaganceMeter digit_meter(horizon, options.record, prec);
  for (std::size_t k = 1; k <= horizon; ++k) {
    const RealInterval digit_sum = digit_meter.sum();
    tail_meter.push(Value::real(inv_tails[k - 1]));
    digit_meter.push(Value::real(digits.log_digit(k, prec)));
    const auto& mt = tail_meter.last_ratio();
    const auto& md = digit_meter.last_ratio();
    if (mt && md && digit_sum.is_positive()) {
      // n = k - 1 terms in S_n.
      const double n = static_cast<double>(k - 1);
      const double bound = (1.0 + n * md->hi) / digit_sum.lower() * (1.0 + kRelativeSlack);
      ++out.route_checked;
      if (mt->lo - md->hi > bound || md->lo - mt->hi > bound) ++out.route_violations;
    }
  }
  out.bugeaud_trace = tail_meter.finish();
  out.digit_trace = digit_meter.finish();
  out.bugeaud = {2.0 + out.bugeaud_trace.tail_estimate(), 2.0 + out.bugeaud_trace.estimate(), true};
  out.digit = {2.0 + out.digit_trace.tail_estimate(), 2.0 + out.digit_trace.estimate(), true};

  // Direct route.
  const std::size_t tail_start = horizon / 2 == 0 ? 1 : horizon / 2;
  const RealInterval one = RealInterval::from_long(1, prec);
  const RealInterval two = RealInterval::from_long(2, prec);
  const double dirichlet_c = std::log(2.0) + 1.0;
  ConvergentState st;
  std::optional<RatioBound> window_max;
  std::optional<RatioBound> running_max;
  for (std::size_t n = 1; n < horizon; ++n) {
    if (!digits.is_exact(n)) {
      out.direct_complete = false;
      break;
    }
    advance_in_place(st, digits.digit(n));
    if (st.q_cur == 1) continue;
    const RealInterval lq = log(RealInterval::from_int(st.q_cur, prec));
    const RealInterval& lt = inv_tails[n];
    const RealInterval t = exp(-lt);
    const RealInterval r = RealInterval::from_int(st.q_prev, prec) /
                           RealInterval::from_int(st.q_cur, prec);
    const RealInterval e = (two * lq + log(one + r * t) + lt) / lq;
    const RatioBound b{e.lower(), e.upper()};
    out.direct_index.push_back(n);
    out.direct.push_back(b);
    if (b.hi < 2.0 - dirichlet_c / lq.lower()) ++out.dirichlet_violations;
    auto bump = [&](std::optional<RatioBound>& m) {
      if (!m) {
        m = b;
      } else {
        m->lo = std::max(m->lo, b.lo);
        m->hi = std::max(m->hi, b.hi);
      }
    };
    bump(running_max);
    if (n >= tail_start) bump(window_max);
  }
  if (window_max) {
    out.direct_point = {window_max->mid(), running_max->mid(), true};
  } else if (running_max) {
    out.direct_point = {0.0, running_max->mid(), false};
  }
  if (!options.record) {
    out.direct.clear();
    out.direct_index.clear();
  }

  std::vector<double> points = {out.bugeaud.estimate, out.digit.estimate};
  if (out.direct_point.available) points.push_back(out.direct_point.estimate);
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  out.consistent = *hi - *lo <= options.tolerance;
  return out;
}

nlohmann::json ExponentExperiment::to_json(bool include_series) const {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : replicas) {
    reps.push_back({{"replica", r.replica},
                    {"seed", r.seed},
                    {"estimate", r.estimate.to_json(include_series)}});
  }
  return {{"spec", spec},
          {"horizon", horizon},
          {"seed", seed},
          {"replicas", std::move(reps)},
          {"summary",
           {{"bugeaud", bugeaud.to_json()},
            {"digit", digit.to_json()},
            {"direct", direct.to_json()},
            {"bugeaud_sup", bugeaud_sup.to_json()},
            {"digit_sup", digit_sup.to_json()},
            {"direct_sup", direct_sup.to_json()},
            {"consistent_replicas", consistent_replicas}}}};
}

ExponentExperiment exponent_experiment(const SamplerSpec& spec, std::size_t horizon,
                                       std::size_t replicas, std::uint64_t seed,
                                       std::size_t jobs, const ExponentOptions& options) {
  if (replicas < 1) throw InvalidArgument("exponent_experiment: replicas must be >= 1");
  if (!spec.produces_digits()) {
    throw ConfigError("exponent: sampler kind '" + spec.kind() + "' does not produce digits");
  }
  ExponentExperiment out;
  out.spec = spec.to_json();
  out.horizon = horizon;
  out.seed = seed;
  out.replicas = parallel_map<ExponentReplica>(replicas, jobs, [&](std::size_t r) {
    ExponentReplica rep;
    rep.replica = r;
    rep.seed = derive_seed(seed, r);
    DigitStream digits = make_digit_stream(spec, rep.seed);
    rep.estimate = estimate_exponent(digits, horizon, options);
    return rep;
  });
  std::vector<double> b, d, e, bs, ds, es;
  for (const auto& r : out.replicas) {
    b.push_back(r.estimate.bugeaud.estimate);
    d.push_back(r.estimate.digit.estimate);
    bs.push_back(r.estimate.bugeaud.sup_estimate);
    ds.push_back(r.estimate.digit.sup_estimate);
    if (r.estimate.direct_point.available) {
      e.push_back(r.estimate.direct_point.estimate);
      es.push_back(r.estimate.direct_point.sup_estimate);
    }
    if (r.estimate.consistent) ++out.consistent_replicas;
  }
  out.bugeaud = quantiles_or_zero(b);
  out.digit = quantiles_or_zero(d);
  out.direct = quantiles_or_zero(e);
  out.bugeaud_sup = quantiles_or_zero(bs);
  out.digit_sup = quantiles_or_zero(ds);
  out.direct_sup = quantiles_or_zero(es);
  return out;
}

}  // namespace cflab
