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

#include "cflab/cf/convergents.hpp"

#include <algorithm>

#include "cflab/error.hpp"

namespace cflab {

void advance_in_place(ConvergentState& s, const BigInt& a) {
  if (a < 1) throw InvalidArgument("partial quotient must be >= 1, got " + a.get_str());
  // (p_prev, p_cur) <- (p_cur, a p_cur + p_prev), likewise for q.
  mpz_addmul(s.p_prev.get_mpz_t(), a.get_mpz_t(), s.p_cur.get_mpz_t());
  mpz_swap(s.p_prev.get_mpz_t(), s.p_cur.get_mpz_t());
  mpz_addmul(s.q_prev.get_mpz_t(), a.get_mpz_t(), s.q_cur.get_mpz_t());
  mpz_swap(s.q_prev.get_mpz_t(), s.q_cur.get_mpz_t());
  ++s.n;
}

ConvergentState advance_convergent(const ConvergentState& state, const BigInt& a) {
  ConvergentState next = state;
  advance_in_place(next, a);
  return next;
}

ConvergentState convergent_at(DigitStream& digits, std::size_t n) {
  ConvergentState s;
  for (std::size_t k = 1; k <= n; ++k) advance_in_place(s, digits.digit(k));
  return s;
}

RationalInterval evaluate(DigitStream& digits, std::size_t n) {
  if (n == 0) throw InvalidArgument("evaluate needs depth n >= 1");
  if (!digits.has(n + 1)) throw StreamExhausted(n + 1, digits.produced_count());
  ConvergentState s = convergent_at(digits, n);
  Rational a(s.p_cur, s.q_cur);
  advance_in_place(s, digits.digit(n + 1));
  Rational b(s.p_cur, s.q_cur);
  return RationalInterval::ordered(std::move(a), std::move(b));
}

Rational evaluate_finite(const std::vector<BigInt>& digits) {
  ConvergentState s;
  for (const auto& a : digits) advance_in_place(s, a);
  return Rational(s.p_cur, s.q_cur);
}

std::vector<BigInt> expand_rational(const Rational& x) {
  if (x <= 0 || x >= 1) throw InvalidArgument("expand_rational needs 0 < x < 1, got " + to_string(x));
  std::vector<BigInt> out;
  BigInt num = x.get_num();
  BigInt den = x.get_den();
  // x = num/den; a = floor(den/num), then x <- den/num - a.
  while (num != 0) {
    BigInt a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
    out.push_back(a);
    den = num;
    num = r;
  }
  return canonicalize(std::move(out));
}

std::vector<BigInt> canonicalize(std::vector<BigInt> digits) {
  if (digits.size() >= 2 && digits.back() == 1) {
    digits.pop_back();
    digits.back() += 1;
  }
  return digits;
}

RationalInterval gauss_tail(DigitStream& digits, std::size_t n, std::size_t m) {
  if (m == 0) throw InvalidArgument("gauss_tail needs depth m >= 1");
  if (!digits.has(n + m + 1)) throw StreamExhausted(n + m + 1, digits.produced_count());
  ConvergentState s;
  for (std::size_t k = 1; k <= m; ++k) advance_in_place(s, digits.digit(n + k));
  Rational a(s.p_cur, s.q_cur);
  advance_in_place(s, digits.digit(n + m + 1));
  Rational b(s.p_cur, s.q_cur);
  return RationalInterval::ordered(std::move(a), std::move(b));
}

namespace {

// Shared backward pass.  Fills tails[k] (k < count) and, when logs != nullptr,
// logs[k] with an enclosure of log(1/t_k).
void backward_pass(DigitStream& digits, std::size_t count, const TailOptions& opt,
                   std::vector<RealInterval>* tails, std::vector<RealInterval>* logs) {
  const mpfr_prec_t prec = opt.precision;
  std::size_t top = count + opt.extra;
  RealInterval t = RealInterval::from_bounds(0, 1, prec);
  if (!digits.has(top)) {
    // Finite expansion: G^L x = 0 exactly.
    top = digits.produced_count();
    if (count > top) throw StreamExhausted(count, top);
    t = RealInterval(prec);
  }
  if (tails) tails->assign(count, RealInterval(prec));
  if (logs) logs->assign(count, RealInterval(prec));
  const RealInterval one = RealInterval::from_long(1, prec);
  BigFloat lo(prec), hi(prec);
  for (std::size_t k = top; k-- > 0;) {
    // t_k = 1/(a_{k+1} + t_{k+1}); t holds t_{k+1} on entry.
    const std::size_t idx = k + 1;
    const bool want = k < count;
    if (digits.is_exact(idx)) {
      RealInterval denom = RealInterval::from_int(digits.digit(idx), prec) + t;
      t = one / denom;
      if (want && logs) (*logs)[k] = log(denom);
    } else {
      // a_{k+1} lies in [e^{la.lo}, e^{la.hi}].
      RealInterval la = digits.log_digit(idx, prec);
      RealInterval a = exp(la);
      mpfr_add(lo.get(), a.lo().get(), t.lo().get(), MPFR_RNDD);
      mpfr_add(hi.get(), a.hi().get(), t.hi().get(), MPFR_RNDU);
      mpfr_ui_div(lo.get(), 1, lo.get(), MPFR_RNDU);
      mpfr_ui_div(hi.get(), 1, hi.get(), MPFR_RNDD);
      t = RealInterval::from_endpoints(hi, lo, prec);
      if (want && logs) {
        // log(a + t_{k+1}) <= la.hi + log(1 + e^{-la.hi}) <= la.hi + e^{-la.lo}.
        mpfr_neg(hi.get(), la.lo().get(), MPFR_RNDU);
        mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), la.hi().get(), MPFR_RNDU);
        (*logs)[k] = RealInterval::from_endpoints(la.lo(), hi, prec);
      }
    }
    if (want && tails) (*tails)[k] = t;
  }
}

}  // namespace

std::vector<RealInterval> gauss_tails(DigitStream& digits, std::size_t count,
                                      const TailOptions& options) {
  std::vector<RealInterval> tails;
  backward_pass(digits, count, options, &tails, nullptr);
  return tails;
}

std::vector<RealInterval> log_inverse_tails(DigitStream& digits, std::size_t count,
                                            const TailOptions& options) {
  std::vector<RealInterval> logs;
  backward_pass(digits, count, options, nullptr, &logs);
  return logs;
}

ApproximationRatio approximation_ratio(DigitStream& digits, std::size_t n,
                                       const TailOptions& options) {
  if (n == 0) throw InvalidArgument("approximation_ratio needs n >= 1");
  ApproximationRatio out;
  out.n = n;
  const ConvergentState s = convergent_at(digits, n);
  const Rational pn(s.p_cur, s.q_cur);
  const Rational q2 = Rational(s.q_cur * s.q_cur);
  const Rational half(1, 2);
  const Rational two(2);
  for (std::size_t m = 8;; m *= 2) {
    m = std::min(m, std::max<std::size_t>(options.max_extra, 1));
    RationalInterval x = evaluate(digits, n + m);
    RationalInterval t = gauss_tail(digits, n, m);
    Rational g0 = abs(x.lo - pn);
    Rational g1 = abs(x.hi - pn);
    RationalInterval gap = RationalInterval::ordered(g0, g1);
    if (x.lo < pn && pn < x.hi) gap.lo = 0;
    out.ratio = {gap.lo * q2 / t.hi, gap.hi * q2 / t.lo};
    out.depth_used = m;
    if (out.ratio.lo >= half && out.ratio.hi <= two) {
      out.decision = Decision::kInside;
      return out;
    }
    if (out.ratio.hi < half || out.ratio.lo > two) {
      out.decision = Decision::kOutside;
      return out;
    }
    if (m >= options.max_extra) {
      out.decision = Decision::kUndecided;
      return out;
    }
  }
}

std::vector<RealInterval> denominator_deviation(DigitStream& digits, std::size_t count,
                                                const TailOptions& options) {
  const mpfr_prec_t prec = options.precision;
  std::vector<RealInterval> logs = log_inverse_tails(digits, count, options);
  std::vector<RealInterval> out;
  out.reserve(count);
  ConvergentState s;
  RealInterval sum(prec);
  for (std::size_t n = 1; n <= count; ++n) {
    advance_in_place(s, digits.digit(n));
    sum += logs[n - 1];
    RealInterval lq = s.q_cur == 1 ? RealInterval(prec) : log(RealInterval::from_int(s.q_cur, prec));
    out.push_back(lq - sum);
  }
  return out;
}

}  // namespace cflab
