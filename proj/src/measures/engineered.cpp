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

#include "cflab/measures/engineered.hpp"

#include "cflab/error.hpp"

namespace cflab {

EngineeredSource::EngineeredSource(const Rational& r, std::size_t bit_cap, mpfr_prec_t prec)
    : r_(r), bit_cap_(bit_cap), prec_(prec), log_sum_(prec) {
  if (r_ <= 0) throw InvalidArgument("engineered stream needs r > 0");
  if (!mpz_fits_ulong_p(r_.get_num_mpz_t()) || !mpz_fits_ulong_p(r_.get_den_mpz_t())) {
    throw InvalidArgument("engineered stream needs a small rational r");
  }
}

bool EngineeredSource::next(DigitEntry& out) {
  ++n_;
  out.log_value.reset();
  if (n_ == 1) {
    out.value = 2;
    product_ = 2;
    log_sum_ = log(RealInterval::from_long(2, prec_));
    return true;
  }
  const unsigned long u = mpz_get_ui(r_.get_num_mpz_t());
  const unsigned long v = mpz_get_ui(r_.get_den_mpz_t());
  if (exact_ && bit_length(product_) * u <= bit_cap_) {
    BigInt power = pow(product_, u);
    BigInt root;
    const bool perfect = mpz_root(root.get_mpz_t(), power.get_mpz_t(), v) != 0;
    if (!perfect) root += 1;
    out.value = root;
    product_ *= root;
    log_sum_ += log(RealInterval::from_int(root, prec_));
    return true;
  }
  exact_ = false;
  // log a_{n+1} = log ceil(e^{r L_n}) in [r L_n, r L_n + e^{-r L_n}].
  RealInterval base = RealInterval::from_rational(r_, prec_) * log_sum_;
  BigFloat hi(prec_);
  mpfr_neg(hi.get(), base.lo().get(), MPFR_RNDU);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), base.hi().get(), MPFR_RNDU);
  RealInterval la = RealInterval::from_endpoints(base.lo(), hi, prec_);
  log_sum_ += la;
  out.value = 0;
  out.log_value = std::move(la);
  return true;
}

DigitStream engineered_digits(const Rational& r, std::size_t bit_cap) {
  return DigitStream::from_source(std::make_unique<EngineeredSource>(r, bit_cap));
}

}  // namespace cflab
