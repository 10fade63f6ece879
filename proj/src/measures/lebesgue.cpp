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

#include "cflab/measures/lebesgue.hpp"

#include "cflab/error.hpp"

namespace cflab {

LebesgueSource::LebesgueSource(std::uint64_t seed) : bits_(seed) {}

void LebesgueSource::reveal() {
  const std::uint64_t w = bits_.next_word();
  BigInt word;
  mpz_import(word.get_mpz_t(), 1, 1, sizeof w, 0, 0, &w);
  // B <- A w + 2^64 B, D <- C w + 2^64 D.
  mpz_mul_2exp(b_.get_mpz_t(), b_.get_mpz_t(), 64);
  mpz_addmul(b_.get_mpz_t(), a_.get_mpz_t(), word.get_mpz_t());
  mpz_mul_2exp(d_.get_mpz_t(), d_.get_mpz_t(), 64);
  mpz_addmul(d_.get_mpz_t(), c_.get_mpz_t(), word.get_mpz_t());
  mpz_mul_2exp(m_.get_mpz_t(), m_.get_mpz_t(), 64);
  m_ += word;
  k_ += 64;
}

bool LebesgueSource::next(DigitEntry& out) {
  out.log_value.reset();
  std::size_t spent = 0;
  for (;;) {
    // Endpoints: y = 0 gives B/D, y = 1 gives (A+B)/(C+D).  Numerators are
    // >= 0 and denominators > 0 on [0,1].
    n1_ = a_ + b_;
    d1_ = c_ + d_;
    if (mpz_sgn(b_.get_mpz_t()) > 0 && mpz_sgn(n1_.get_mpz_t()) > 0) {
      mpz_fdiv_qr(q0_.get_mpz_t(), r0_.get_mpz_t(), d_.get_mpz_t(), b_.get_mpz_t());
      mpz_fdiv_qr(q1_.get_mpz_t(), r1_.get_mpz_t(), d1_.get_mpz_t(), n1_.get_mpz_t());
      if (q0_ == q1_ && mpz_sgn(q0_.get_mpz_t()) > 0 && mpz_sgn(r0_.get_mpz_t()) != 0 &&
          mpz_sgn(r1_.get_mpz_t()) != 0) {
        // (A,B,C,D) <- (C - dA, D - dB, A, B).
        mpz_submul(c_.get_mpz_t(), q0_.get_mpz_t(), a_.get_mpz_t());
        mpz_submul(d_.get_mpz_t(), q0_.get_mpz_t(), b_.get_mpz_t());
        mpz_swap(a_.get_mpz_t(), c_.get_mpz_t());
        mpz_swap(b_.get_mpz_t(), d_.get_mpz_t());
        out.value = q0_;
        return true;
      }
    }
    if (spent >= kMaxBitsPerDigit) {
      throw UndecidableAtCap("lebesgue digit extraction straddled a cylinder boundary for " +
                             std::to_string(spent) + " bits");
    }
    reveal();
    spent += 64;
  }
}

RationalInterval LebesgueSource::enclosure() const {
  Rational lo(m_), hi(m_ + 1);
  mpq_div_2exp(lo.get_mpq_t(), lo.get_mpq_t(), k_);
  mpq_div_2exp(hi.get_mpq_t(), hi.get_mpq_t(), k_);
  return {lo, hi};
}

DigitStream lebesgue_digits(std::uint64_t seed) {
  return DigitStream::from_source(std::make_unique<LebesgueSource>(seed));
}

}  // namespace cflab
