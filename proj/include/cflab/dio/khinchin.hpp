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

// Counting solutions of |x - p/q| < f(q) / (M q).
//
// For q at or beyond the Legendre cutoff q_cut (the first q with
// 2 q f(q) / M < 1, stable since q f(q) is non-increasing) every solution is
// a convergent, so only convergents are tested there.  Below the cutoff all
// reduced p/q with q_min <= q < q_cut are enumerated.  The convergent test
// uses q_n |x - p_n/q_n| = t / (q_n + q_{n-1} t) with t = G^n x enclosed by
// the backward tail pass, decided in interval arithmetic.
//
// Convergents n = 1..N are examined, which reads N + 1 digits plus the tail
// depth.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cflab/cf/convergents.hpp"
#include "cflab/dio/approx_function.hpp"
#include "cflab/dio/series.hpp"
#include "cflab/extravagance/process.hpp"
#include "cflab/measures/sampler_spec.hpp"
#include "json.hpp"

namespace cflab {

// M = factor * e^exp_power.
struct Divisor {
  Rational factor{1};
  long exp_power = 0;

  RealInterval value(mpfr_prec_t prec = kDefaultPrecision) const;
  std::string to_string() const;
  static Divisor unit() { return {}; }
  static Divisor khinchin() { return {Rational(2), 8}; }  // 2 e^8
};

struct KhinchinOptions {
  Divisor divisor;
  std::size_t q_min = 2;
  // Largest cutoff for which the pre-Legendre regime is enumerated.
  std::size_t brute_force_limit = 4096;
  std::size_t dense_monotone_limit = 10000;
  std::optional<bool> declared_convergent;
  TailOptions tails;
};

struct KhinchinHit {
  std::size_t n = 0;  // convergent index, 0 for an enumerated pre-cutoff solution
  BigInt p;
  BigInt q;
  RealInterval gap;        // |x - p/q|
  RealInterval threshold;  // f(q) / (M q)
  bool convergent = true;
};

struct KhinchinReplica {
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  std::vector<KhinchinHit> hits;  // at the divisor threshold, total count = hits.size()
  std::size_t unit_hits = 0;      // convergent hits at threshold f(q)/q, q >= q_cut
  std::size_t evaluated = 0;
  std::size_t undecided = 0;
  std::size_t final_half_hits = 0;   // convergent hits with n > N/2
  std::size_t q_decades = 0;         // complete decades [10^d, 10^{d+1}) of q examined
  std::size_t q_decades_with_hit = 0;
  std::size_t n_decades = 0;         // complete decades of the index n in [1, N]
  std::size_t n_decades_with_hit = 0;

  bool plateau() const { return final_half_hits == 0; }
  bool q_decades_increasing() const { return q_decades > 0 && q_decades_with_hit == q_decades; }
  bool n_decades_increasing() const { return n_decades > 0 && n_decades_with_hit == n_decades; }
};

struct KhinchinReport {
  nlohmann::json spec;
  std::string f;
  Divisor divisor;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  std::size_t q_cut = 0;          // Legendre cutoff; 0 when none was found
  bool pre_cutoff_enumerated = false;
  std::optional<bool> declared_convergent;
  std::vector<KhinchinReplica> replicas;
  std::optional<SeriesReport> series;

  std::size_t plateau_replicas = 0;
  std::size_t q_decade_replicas = 0;
  std::size_t n_decade_replicas = 0;
  std::size_t undecided_total = 0;
  Quantiles hit_counts;

  nlohmann::json to_json() const;
};

// First q >= q_min with 2 q f(q) / M certainly < 1, searched up to `limit`.
std::optional<std::size_t> legendre_cutoff(const ApproxFunction& f, const Divisor& divisor,
                                           std::size_t q_min, std::size_t limit);

// One stream.  Throws ConfigError if q f(q) certainly increases on the
// evaluated convergent denominators.
KhinchinReplica khinchin_count(DigitStream& digits, const ApproxFunction& f, std::size_t horizon,
                               const KhinchinOptions& options, std::optional<std::size_t> q_cut);

KhinchinReport khinchin_experiment(const SamplerSpec& spec, const ApproxFunction& f,
                                   std::size_t horizon, std::size_t replicas,
                                   std::uint64_t seed, std::size_t jobs = 1,
                                   const KhinchinOptions& options = {});

}  // namespace cflab
