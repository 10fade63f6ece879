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

#include "cflab/measures/skyscraper.hpp"

#include <algorithm>
#include <cmath>

#include "cflab/error.hpp"

namespace cflab {

unsigned long TowerState::exponent() const {
  const unsigned long phi = mpz_get_ui(base_value.get_mpz_t());
  return std::min(level, phi - level);
}

Rational TowerState::value() const { return pow(a, exponent()); }

std::vector<Rational> tent_block(unsigned long phi, const Rational& a) {
  if (phi < 1) throw InvalidArgument("tower height must be >= 1");
  std::vector<Rational> out;
  out.reserve(phi);
  for (unsigned long j = 0; j < phi; ++j) out.push_back(pow(a, std::min(j, phi - j)));
  return out;
}

Rational tent_block_sum(unsigned long phi, const Rational& a) {
  Rational s = 0;
  for (const auto& v : tent_block(phi, a)) s += v;
  return s;
}

Rational tent_block_closed_form(unsigned long phi, const Rational& a) {
  if (a == 1) throw InvalidArgument("closed form needs a != 1");
  const unsigned long h = phi / 2;
  const Rational ah = pow(a, h);
  Rational s = (a + 1) / (a - 1) * (ah - 1);
  if (phi % 2 == 1) s += ah;
  s.canonicalize();
  return s;
}

DigitLawPtr default_skyscraper_base() { return make_power_tail_law(Rational(5, 2)); }

SkyscraperProcess::SkyscraperProcess(SkyscraperParams params)
    : params_(std::move(params)), bits_(params_.seed) {
  if (params_.a <= 1) throw InvalidArgument("skyscraper needs a > 1, got " + to_string(params_.a));
  if (!params_.base) params_.base = default_skyscraper_base();
  integer_a_ = params_.a.get_den() == 1;
  if (integer_a_) a_int_ = params_.a.get_num();
}

std::string SkyscraperProcess::name() const {
  return "skyscraper(a=" + to_string(params_.a) + ", " + params_.base->name() + ")";
}

nlohmann::json SkyscraperProcess::diagnostics() const {
  return {{"blocks_completed", blocks_},
          {"anchor_identity_failures", anchor_failures_},
          {"max_height", max_phi_}};
}

void SkyscraperProcess::close_block() {
  if (phi_ == 0) return;
  const Rational closed = tent_block_closed_form(phi_, params_.a);
  const bool ok = integer_a_ ? (closed.get_den() == 1 && closed.get_num() == block_sum_z_)
                             : closed == block_sum_q_;
  if (!ok) ++anchor_failures_;
  ++blocks_;
}

void SkyscraperProcess::start_block() {
  const BigInt phi = params_.base->sample_exact(bits_);
  if (!mpz_fits_ulong_p(phi.get_mpz_t())) throw Error("tower height overflow");
  phi_ = mpz_get_ui(phi.get_mpz_t());
  max_phi_ = std::max(max_phi_, phi_);
  level_ = 0;
  cur_z_ = 1;
  cur_q_ = 1;
  block_sum_z_ = 0;
  block_sum_q_ = 0;
}

unsigned long SkyscraperProcess::step(Rational* value_q, BigInt* value_z) {
  if (phi_ == 0 || level_ == phi_) {
    close_block();
    start_block();
  }
  const unsigned long e = std::min(level_, phi_ - level_);
  if (level_ > 0) {
    const unsigned long prev = std::min(level_ - 1, phi_ - level_ + 1);
    if (e > prev) {
      if (integer_a_) cur_z_ *= a_int_; else cur_q_ *= params_.a;
    } else if (e < prev) {
      if (integer_a_) mpz_divexact(cur_z_.get_mpz_t(), cur_z_.get_mpz_t(), a_int_.get_mpz_t());
      else cur_q_ /= params_.a;
    }
  }
  if (integer_a_) {
    block_sum_z_ += cur_z_;
    if (value_z) *value_z = cur_z_;
    if (value_q) *value_q = Rational(cur_z_);
  } else {
    block_sum_q_ += cur_q_;
    if (value_q) *value_q = cur_q_;
  }
  ++level_;
  return e;
}

void SkyscraperProcess::next(Value& out) {
  if (integer_a_) {
    out.kind = Value::Kind::kInt;
    step(nullptr, &out.z);
  } else {
    Rational q;
    step(&q, nullptr);
    out = Value::rational(std::move(q));
  }
}

BigInt ceil_exp(const Rational& psi) {
  if (psi < 0) throw InvalidArgument("ceil_exp needs psi >= 0");
  const double bits = psi.get_d() / std::log(2.0);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 96;
  for (int attempt = 0; attempt < 16; ++attempt, prec += 128) {
    RealInterval e = exp(RealInterval::from_rational(psi, prec));
    BigInt lo, hi;
    mpfr_get_z(lo.get_mpz_t(), e.lo().get(), MPFR_RNDU);
    mpfr_get_z(hi.get_mpz_t(), e.hi().get(), MPFR_RNDU);
    if (lo == hi) return lo;
  }
  throw UndecidableAtCap("ceil(e^psi) undecided at working precision");
}

SkyscraperDigitSource::SkyscraperDigitSource(SkyscraperParams params)
    : process_(std::move(params)) {}

std::string SkyscraperDigitSource::name() const { return "digits of " + process_.name(); }

bool SkyscraperDigitSource::next(DigitEntry& out) {
  Rational psi;
  process_.step(&psi, nullptr);
  out.log_value.reset();
  const double bits = psi.get_d() / std::log(2.0);
  if (std::isfinite(bits) && bits < static_cast<double>(kDigitBitCap)) {
    out.value = ceil_exp(psi);
    return true;
  }
  // log ceil(e^psi) in [psi, psi + e^{-psi}].
  const mpfr_prec_t prec = kDefaultPrecision;
  RealInterval p = RealInterval::from_rational(psi, prec);
  BigFloat hi(prec);
  mpfr_neg(hi.get(), p.lo().get(), MPFR_RNDU);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), p.hi().get(), MPFR_RNDU);
  out.value = 0;
  out.log_value = RealInterval::from_endpoints(p.lo(), hi, prec);
  return true;
}

}  // namespace cflab
