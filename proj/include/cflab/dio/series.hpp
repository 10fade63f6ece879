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

// Partial sums of sum_n mu((0, n f(n))) / n and the condensation comparison
// between that series (with f(n) = n^-(s+1)) and E_mu(log a).
//
// No convergence verdict is ever computed from partial sums.  A declared
// analytic verdict can be attached and is only echoed.  The condensation
// classifier labels a curve "growing" when its increment over [N^1/2, N] is at
// least 3/4 of the increment over [N^1/4, N^1/2], which separates log log
// divergence (equal increments) from summable tails (shrinking increments).

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cflab/dio/approx_function.hpp"
#include "cflab/measures/digit_law.hpp"
#include "cflab/numeric.hpp"
#include "json.hpp"

namespace cflab {

// t -> mu((0, t)) as an interval map.  Arguments below 0 count as 0.
class MuCdf {
 public:
  using Fn = std::function<RealInterval(const RealInterval&)>;

  // Throws InvalidArgument unless fn([0,0]) is exactly 0.
  MuCdf(std::string name, Fn fn);

  static MuCdf lebesgue();
  // log(1 + t) / log 2.
  static MuCdf gauss();
  // Enclosure [P(a >= floor(1/t) + 1), P(a >= floor(1/t))] for iid digits.
  static MuCdf digit_law(DigitLawPtr law);

  RealInterval operator()(const RealInterval& t) const { return fn_(t); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

struct SeriesReport {
  std::string cdf;
  std::string f;
  std::size_t horizon = 0;
  std::size_t start = 1;  // first n summed (domain start of f)
  std::vector<std::size_t> checkpoints;
  std::vector<RealInterval> sums;
  std::optional<bool> declared_convergent;

  const RealInterval& total() const { return sums.back(); }
  nlohmann::json to_json() const;
};

// Checkpoints are clamped to the horizon; the horizon itself is always last.
// Throws InvalidArgument if the cdf certainly decreases on the evaluated points.
SeriesReport series_partial_sums(const MuCdf& cdf, const ApproxFunction& f, std::size_t horizon,
                                 std::vector<std::size_t> checkpoints = {},
                                 std::optional<bool> declared_convergent = std::nullopt,
                                 mpfr_prec_t prec = 64);

struct CurveClass {
  std::vector<std::size_t> checkpoints;  // includes N^1/4, N^1/2 and N
  std::vector<RealInterval> sums;
  double increment_low = 0;   // over [N^1/4, N^1/2]
  double increment_high = 0;  // over [N^1/2, N]
  bool growing = false;

  nlohmann::json to_json() const;
};

struct CondensationRow {
  Rational s;
  CurveClass series;
};

struct CondensationReport {
  std::string law;
  std::size_t horizon = 0;
  CurveClass log_mean;  // partial sums of sum_{n<=N} log n P(a = n)
  std::vector<CondensationRow> rows;
  // Every row classifies like log_mean.
  bool agree = false;

  nlohmann::json to_json() const;
};

// Needs s > 0 for every s and horizon >= 16.
CondensationReport condensation_equivalence_check(DigitLawPtr law,
                                                  const std::vector<Rational>& s_values,
                                                  std::size_t horizon = 1000000,
                                                  mpfr_prec_t prec = 64);

// Shared classifier.
bool classify_growing(double increment_low, double increment_high);

}  // namespace cflab
