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

// Finite-horizon extravagance of a non-negative sequence.
//
// Convention: the inputs are x_1, x_2, ..., x_N with x_k = Phi(tau^{k-1} w)
// for processes.  S_n = x_1 + ... + x_n and M_n = x_{n+1} / S_n, defined for
// start_index <= n < N where start_index is the first n with S_n > 0.
//
// Sums are exact (integers or rationals) until a real-valued input arrives,
// after which they are MPFR enclosures.  Each M_n is stored as a double
// interval rounded outward.  The final running sup is only a lower witness
// for the limsup; the tail-window max over n in [N/2, N) witnesses decay.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cflab/measures/value_process.hpp"
#include "cflab/numeric.hpp"
#include "json.hpp"

namespace cflab {

struct RatioBound {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return lo == hi ? lo : 0.5 * lo + 0.5 * hi; }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

struct ExtravaganceTrace {
  std::size_t horizon = 0;
  // First n with S_n > 0; 0 when every input was zero.
  std::size_t start_index = 0;
  // Number of ratios M_n produced.
  std::size_t count = 0;
  RatioBound final_sup;
  RatioBound tail_max;
  // Index realizing final_sup.lo (0 when empty).
  std::size_t argmax = 0;
  // Present only when the meter was created with record = true.
  // ratios[i] is M_{start_index + i}; running_sup likewise.
  std::vector<RatioBound> ratios;
  std::vector<RatioBound> running_sup;

  bool empty() const { return count == 0; }
  bool recorded() const { return ratios.size() == count; }
  // Midpoint of the final running sup, 0 for the empty trace.
  double estimate() const { return empty() ? 0.0 : final_sup.mid(); }
  double tail_estimate() const { return empty() ? 0.0 : tail_max.mid(); }
  // M_n; requires a recorded trace and start_index <= n < start_index + count.
  const RatioBound& ratio(std::size_t n) const;
  const RatioBound& sup_at(std::size_t n) const;

  nlohmann::json to_json(bool include_series = false) const;
};

class ExtravaganceMeter {
 public:
  explicit ExtravaganceMeter(std::size_t horizon, bool record = false,
                             mpfr_prec_t prec = kDefaultPrecision);

  // Consumes x_k for k = pushed() + 1.  Throws InvalidArgument on a negative
  // input or once the horizon has been reached.
  void push(const Value& x);
  bool done() const { return pushed_ >= horizon_; }
  std::size_t pushed() const { return pushed_; }
  // M_{pushed()-1} if the last push produced a ratio.
  const std::optional<RatioBound>& last_ratio() const { return last_; }
  // Current S_{pushed()} as an enclosure.
  RealInterval sum() const;

  ExtravaganceTrace finish() const { return trace_; }

 private:
  RatioBound ratio_of(const Value& x) const;

  std::size_t horizon_;
  bool record_;
  mpfr_prec_t prec_;
  std::size_t pushed_ = 0;
  Value sum_;
  std::optional<RatioBound> last_;
  ExtravaganceTrace trace_;
};

// Trace over xs[0..horizon).  Requires xs.size() >= horizon.
ExtravaganceTrace sequence_extravagance(const std::vector<Value>& xs, std::size_t horizon,
                                        bool record = true);
ExtravaganceTrace sequence_extravagance(const std::vector<Rational>& xs, std::size_t horizon,
                                        bool record = true);
// Draws `horizon` values from the process.
ExtravaganceTrace run_extravagance(ValueProcess& process, std::size_t horizon,
                                   bool record = false);

// Outward double enclosure of a / b for non-negative a and positive b.
RatioBound ratio_bound(const BigInt& a, const BigInt& b);
RatioBound ratio_bound(const Rational& q);
RatioBound ratio_bound(const RealInterval& r);

}  // namespace cflab
