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

#include "cflab/dio/khinchin.hpp"

#include <algorithm>
#include <cmath>

#include "cflab/error.hpp"
#include "cflab/measures/rng.hpp"
#include "cflab/parallel.hpp"

namespace cflab {

namespace {

enum class Verdict { kHit, kMiss, kUndecided };

// lhs < rhs ?
Verdict compare(const RealInterval& lhs, const RealInterval& rhs) {
  if (lhs.certainly_less(rhs)) return Verdict::kHit;
  if (mpfr_cmp(rhs.hi().get(), lhs.lo().get()) <= 0) return Verdict::kMiss;
  return Verdict::kUndecided;
}

nlohmann::json interval_json(const RealInterval& r) { return {r.lower(), r.upper()}; }

// Decimal decade floor(log10 q), tracked incrementally for increasing q.
class DecadeTracker {
 public:
  std::size_t decade_of(const BigInt& q) {
    while (q >= next_) {
      next_ *= 10;
      ++decade_;
    }
    return decade_;
  }

 private:
  BigInt next_{10};
  std::size_t decade_ = 0;
};

}  // namespace

RealInterval Divisor::value(mpfr_prec_t prec) const {
  RealInterval v = RealInterval::from_rational(factor, prec);
  if (exp_power != 0) v = v * RealInterval::exp_of(exp_power, prec);
  return v;
}

std::string Divisor::to_string() const {
  std::string s = cflab::to_string(factor);
  if (exp_power != 0) s += "*e^" + std::to_string(exp_power);
  return s;
}

std::optional<std::size_t> legendre_cutoff(const ApproxFunction& f, const Divisor& divisor,
                                           std::size_t q_min, std::size_t limit) {
  const RealInterval m = divisor.value();
  const Rational one(1);
  const std::size_t start = std::max(q_min, f.domain_start());
  for (std::size_t q = start; q <= limit; ++q) {
    const BigInt qb(static_cast<unsigned long>(q));
    const RealInterval v = RealInterval::from_long(2) * f.scaled_at(qb) / m;
    if (v.certainly_less(one)) return q;
  }
  return std::nullopt;
}

KhinchinReplica khinchin_count(DigitStream& digits, const ApproxFunction& f, std::size_t horizon,
                               const KhinchinOptions& options, std::optional<std::size_t> q_cut) {
  if (horizon < 1) throw InvalidArgument("khinchin: horizon must be >= 1");
  if (options.q_min < 1) throw InvalidArgument("khinchin: q_min must be >= 1");
  if (!digits.has(horizon + 1)) throw StreamExhausted(horizon + 1, digits.produced_count());
  const mpfr_prec_t prec = options.tails.precision;
  const std::vector<RealInterval> tails = gauss_tails(digits, horizon + 1, options.tails);
  const RealInterval m = options.divisor.value(prec);

  KhinchinReplica out;
  // Convergent hits per decade of n, at the divisor threshold.
  std::size_t n_decade_count = 0;
  for (std::size_t top = 10; top - 1 <= horizon; top *= 10) ++n_decade_count;
  std::vector<std::size_t> n_decade_hits(n_decade_count, 0);

  ConvergentState st;
  std::optional<RealInterval> prev_scaled;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (!digits.is_exact(n)) {
      throw Error("khinchin: digit " + std::to_string(n) + " is not an exact integer");
    }
    advance_in_place(st, digits.digit(n));
    const BigInt& q = st.q_cur;
    if (q < options.q_min) continue;
    ++out.evaluated;
    const RealInterval qi = RealInterval::from_int(q, prec);
    const RealInterval fq = f(qi);
    const RealInterval scaled = qi * fq;
    if (prev_scaled && prev_scaled->certainly_less(scaled)) {
      throw ConfigError("approximation function \"" + f.text() +
                        "\": q f(q) increases at q_" + std::to_string(n));
    }
    prev_scaled = scaled;
    const RealInterval& t = tails[n];
    const RealInterval lhs = t / (qi + RealInterval::from_int(st.q_prev, prec) * t);
    const RealInterval rhs = fq / m;
    const Verdict v = compare(lhs, rhs);
    const bool counted = !q_cut || q >= *q_cut;
    if (v == Verdict::kUndecided) {
      if (counted) ++out.undecided;
      continue;
    }
    if (v == Verdict::kHit) {
      std::size_t k = 0;
      for (std::size_t top = 10; k < n_decade_count && n >= top; top *= 10) ++k;
      if (k < n_decade_count) ++n_decade_hits[k];
    }
    if (!counted) continue;
    if (compare(lhs, fq) == Verdict::kHit) ++out.unit_hits;
    if (v == Verdict::kHit) {
      KhinchinHit h;
      h.n = n;
      h.p = st.p_cur;
      h.q = q;
      h.gap = lhs / qi;
      h.threshold = rhs / qi;
      h.convergent = true;
      out.hits.push_back(std::move(h));
      if (n > horizon / 2) ++out.final_half_hits;
    }
  }

  // Pre-cutoff enumeration over all reduced p/q.
  if (q_cut && *q_cut > options.q_min) {
    const RationalInterval xr = evaluate(digits, std::min<std::size_t>(horizon, 48));
    const double xl = xr.lo.get_d();
    const double xh = xr.hi.get_d();
    std::vector<KhinchinHit> pre;
    for (std::size_t qs = options.q_min; qs < *q_cut; ++qs) {
      const BigInt qb(static_cast<unsigned long>(qs));
      const RealInterval thr = f.at(qb, prec) / (m * RealInterval::from_int(qb, prec));
      const double w = thr.upper();
      const double qd = static_cast<double>(qs);
      const long p_lo = std::max(0L, static_cast<long>(std::floor((xl - w) * qd)) - 1);
      const long p_hi = std::min(static_cast<long>(qs), static_cast<long>(std::ceil((xh + w) * qd)) + 1);
      for (long p = p_lo; p <= p_hi; ++p) {
        const BigInt pb(p);
        if (gcd(pb, qb) != 1) continue;
        const Rational c(pb, qb);
        Rational a = xr.lo - c;
        Rational b = xr.hi - c;
        if (a > b) std::swap(a, b);
        Rational glo = sgn(a) <= 0 && sgn(b) >= 0 ? Rational(0) : std::min(abs(a), abs(b));
        Rational ghi = std::max(abs(a), abs(b));
        const RealInterval gap = RealInterval::from_bounds(glo, ghi, prec);
        ++out.evaluated;
        const Verdict v = compare(gap, thr);
        if (v == Verdict::kUndecided) {
          ++out.undecided;
        } else if (v == Verdict::kHit) {
          KhinchinHit h;
          h.n = 0;
          h.p = pb;
          h.q = qb;
          h.gap = gap;
          h.threshold = thr;
          h.convergent = false;
          pre.push_back(std::move(h));
        }
      }
    }
    out.hits.insert(out.hits.begin(), std::make_move_iterator(pre.begin()),
                    std::make_move_iterator(pre.end()));
  }

  // Decades of q fully inside [1, q_N].
  DecadeTracker dt;
  const std::size_t last = dt.decade_of(st.q_cur);
  if (last >= 2) {
    out.q_decades = last - 1;  // decades 1 .. last-1
    std::vector<bool> seen(last, false);
    DecadeTracker hd;
    for (const auto& h : out.hits) {
      const std::size_t d = hd.decade_of(h.q);
      if (d >= 1 && d < last) seen[d] = true;
    }
    out.q_decades_with_hit =
        static_cast<std::size_t>(std::count(seen.begin() + 1, seen.end(), true));
  }
  out.n_decades = n_decade_count;
  out.n_decades_with_hit = static_cast<std::size_t>(
      std::count_if(n_decade_hits.begin(), n_decade_hits.end(), [](std::size_t c) { return c > 0; }));
  return out;
}

nlohmann::json KhinchinReport::to_json() const {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : replicas) {
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& h : r.hits) {
      hs.push_back({{"n", h.n},
                    {"p", to_string(h.p)},
                    {"q", to_string(h.q)},
                    {"gap", interval_json(h.gap)},
                    {"threshold", interval_json(h.threshold)},
                    {"convergent", h.convergent}});
    }
    reps.push_back({{"replica", r.replica},
                    {"seed", r.seed},
                    {"hit_count", r.hits.size()},
                    {"unit_hits", r.unit_hits},
                    {"evaluated", r.evaluated},
                    {"undecided", r.undecided},
                    {"final_half_hits", r.final_half_hits},
                    {"q_decades", r.q_decades},
                    {"q_decades_with_hit", r.q_decades_with_hit},
                    {"n_decades", r.n_decades},
                    {"n_decades_with_hit", r.n_decades_with_hit},
                    {"hits", std::move(hs)}});
  }
  nlohmann::json j = {{"spec", spec},
                      {"f", f},
                      {"divisor", divisor.to_string()},
                      {"horizon", horizon},
                      {"seed", seed},
                      {"q_cut", q_cut},
                      {"pre_cutoff_enumerated", pre_cutoff_enumerated},
                      {"replicas", std::move(reps)},
                      {"summary",
                       {{"plateau_replicas", plateau_replicas},
                        {"q_decade_replicas", q_decade_replicas},
                        {"n_decade_replicas", n_decade_replicas},
                        {"undecided_total", undecided_total},
                        {"hit_counts", hit_counts.to_json()}}}};
  j["declared_convergent"] =
      declared_convergent ? nlohmann::json(*declared_convergent) : nlohmann::json(nullptr);
  j["series"] = series ? series->to_json() : nlohmann::json(nullptr);
  return j;
}

KhinchinReport khinchin_experiment(const SamplerSpec& spec, const ApproxFunction& f,
                                   std::size_t horizon, std::size_t replicas,
                                   std::uint64_t seed, std::size_t jobs,
                                   const KhinchinOptions& options) {
  if (replicas < 1) throw InvalidArgument("khinchin: replicas must be >= 1");
  if (!spec.produces_digits()) {
    throw ConfigError("khinchin: sampler kind '" + spec.kind() + "' does not produce digits");
  }
  if (options.divisor.value().certainly_less(Rational(1))) {
    throw ConfigError("khinchin: divisor must be >= 1");
  }
  const MonotonicityCheck mono = f.check_monotone(options.dense_monotone_limit);
  if (!mono.ok()) {
    throw ConfigError("approximation function \"" + f.text() +
                      "\": q f(q) must be positive and non-increasing (fails at q = " +
                      mono.offending + ")");
  }
  const auto q_cut = legendre_cutoff(f, options.divisor, options.q_min, options.brute_force_limit);

  KhinchinReport out;
  out.spec = spec.to_json();
  out.f = f.text();
  out.divisor = options.divisor;
  out.horizon = horizon;
  out.seed = seed;
  out.q_cut = q_cut.value_or(0);
  out.pre_cutoff_enumerated = q_cut.has_value();
  out.declared_convergent = options.declared_convergent;
  out.replicas = parallel_map<KhinchinReplica>(replicas, jobs, [&](std::size_t r) {
    const std::uint64_t s = derive_seed(seed, r);
    DigitStream digits = make_digit_stream(spec, s);
    KhinchinReplica rep = khinchin_count(digits, f, horizon, options, q_cut);
    rep.replica = r;
    rep.seed = s;
    return rep;
  });

  std::vector<double> counts;
  for (const auto& r : out.replicas) {
    if (r.plateau()) ++out.plateau_replicas;
    if (r.q_decades_increasing()) ++out.q_decade_replicas;
    if (r.n_decades_increasing()) ++out.n_decade_replicas;
    out.undecided_total += r.undecided;
    counts.push_back(static_cast<double>(r.hits.size()));
  }
  out.hit_counts = Quantiles::of(counts);

  std::optional<MuCdf> cdf;
  if (spec.kind() == "lebesgue") {
    cdf = MuCdf::lebesgue();
  } else if (spec.kind() == "iid_pmf") {
    cdf = MuCdf::digit_law(parse_law(spec.to_json().at("law")));
  }
  if (cdf) {
    std::vector<std::size_t> cps;
    for (std::size_t d = 10; d < horizon; d *= 10) cps.push_back(d);
    out.series = series_partial_sums(*cdf, f, horizon, cps, options.declared_convergent);
  }
  return out;
}

}  // namespace cflab
