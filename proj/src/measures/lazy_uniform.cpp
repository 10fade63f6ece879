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

#include "cflab/measures/lazy_uniform.hpp"

#include "cflab/error.hpp"

namespace cflab {

void LazyUniform::refine() {
  if (k_ >= kMaxUniformBits) {
    throw UndecidableAtCap("uniform refinement exceeded " + std::to_string(kMaxUniformBits) +
                           " bits");
  }
  const std::uint64_t w = bits_->next_word();
  if (k_ == 0) first_ = w;
  mpz_mul_2exp(m_.get_mpz_t(), m_.get_mpz_t(), 64);
  BigInt word;
  mpz_import(word.get_mpz_t(), 1, 1, sizeof w, 0, 0, &w);
  m_ += word;
  k_ += 64;
}

std::uint64_t LazyUniform::leading_word() {
  if (k_ == 0) refine();
  return first_;
}

RationalInterval LazyUniform::enclosure() const {
  Rational lo(m_);
  Rational hi(m_ + 1);
  mpq_div_2exp(lo.get_mpq_t(), lo.get_mpq_t(), k_);
  mpq_div_2exp(hi.get_mpq_t(), hi.get_mpq_t(), k_);
  return {lo, hi};
}

RealInterval LazyUniform::real(mpfr_prec_t prec) const {
  BigFloat lo(prec), hi(prec);
  mpfr_set_z_2exp(lo.get(), m_.get_mpz_t(), -static_cast<long>(k_), MPFR_RNDD);
  BigInt up = m_ + 1;
  mpfr_set_z_2exp(hi.get(), up.get_mpz_t(), -static_cast<long>(k_), MPFR_RNDU);
  return RealInterval::from_endpoints(lo, hi, prec);
}

bool LazyUniform::less_than(const Rational& c) {
  if (c <= 0) return false;
  if (c >= 1) return true;
  if (k_ == 0) refine();
  for (;;) {
    RationalInterval e = enclosure();
    if (e.hi <= c) return true;
    if (e.lo >= c) return false;
    refine();
  }
}

}  // namespace cflab
