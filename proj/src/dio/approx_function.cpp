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

#include "cflab/dio/approx_function.hpp"

#include <algorithm>
#include <cctype>

#include "cflab/error.hpp"

namespace cflab {

struct ApproxFunction::Node {
  enum class Op { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kLog, kExp, kSqrt };
  Op op = Op::kConst;
  Rational value;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = ApproxFunction::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

NodePtr constant(Rational v) {
  auto n = std::make_shared<Node>();
  n->op = Op::kConst;
  n->value = std::move(v);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("approximation function \"" + s_ + "\" at offset " +
                      std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      if (eat('+')) {
        l = make(Op::kAdd, l, term());
      } else if (eat('-')) {
        l = make(Op::kSub, l, term());
      } else {
        return l;
      }
    }
  }

  NodePtr term() {
    NodePtr l = unary();
    for (;;) {
      if (eat('*')) {
        l = make(Op::kMul, l, unary());
      } else if (eat('/')) {
        l = make(Op::kDiv, l, unary());
      } else {
        return l;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::kNeg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Op::kPow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "q" || name == "n") return make(Op::kVar);
      Op op;
      if (name == "log") {
        op = Op::kLog;
      } else if (name == "exp") {
        op = Op::kExp;
      } else if (name == "sqrt") {
        op = Op::kSqrt;
      } else {
        fail("unknown name '" + name + "'");
      }
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!eat(')')) fail("expected ')'");
      return make(op, arg);
    }
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool dot = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (dot) ++frac_digits;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    BigInt num(digits);
    BigInt den = pow(BigInt(10), static_cast<unsigned long>(frac_digits));
    return constant(make_rational(num, den));
  }

  std::string s_;
  std::size_t pos_ = 0;
};

RealInterval eval(const Node& n, const RealInterval& q) {
  const mpfr_prec_t prec = q.precision();
  switch (n.op) {
    case Op::kConst: return RealInterval::from_rational(n.value, prec);
    case Op::kVar: return q;
    case Op::kAdd: return eval(*n.lhs, q) + eval(*n.rhs, q);
    case Op::kSub: return eval(*n.lhs, q) - eval(*n.rhs, q);
    case Op::kMul: return eval(*n.lhs, q) * eval(*n.rhs, q);
    case Op::kDiv: return eval(*n.lhs, q) / eval(*n.rhs, q);
    case Op::kNeg: return -eval(*n.lhs, q);
    case Op::kLog: {
      RealInterval a = eval(*n.lhs, q);
      if (!a.is_positive()) throw InvalidArgument("log of a non-positive value");
      return log(a);
    }
    case Op::kExp: return exp(eval(*n.lhs, q));
    case Op::kSqrt: {
      RealInterval a = eval(*n.lhs, q);
      if (!a.is_positive()) throw InvalidArgument("sqrt of a non-positive value");
      return exp(log(a) * RealInterval::from_rational(Rational(1, 2), prec));
    }
    case Op::kPow: {
      RealInterval base = eval(*n.lhs, q);
      if (n.rhs->op == Op::kConst && n.rhs->value.get_den() == 1 &&
          abs(n.rhs->value.get_num()) <= 64) {
        // Small integer exponent: repeated products, valid for any sign.
        long k = n.rhs->value.get_num().get_si();
        const bool invert = k < 0;
        if (invert) k = -k;
        RealInterval out = RealInterval::from_long(1, prec);
        for (long i = 0; i < k; ++i) out = out * base;
        return invert ? RealInterval::from_long(1, prec) / out : out;
      }
      if (!base.is_positive()) throw InvalidArgument("non-integer power of a non-positive value");
      return pow(base, eval(*n.rhs, q));
    }
  }
  throw Error("unreachable");
}

// Matches 1/(q*log(q)^beta) and 1/(q*log(q)).
std::optional<Rational> match_family(const Node& n) {
  auto is_var = [](const NodePtr& p) { return p && p->op == Op::kVar; };
  auto is_log_var = [&](const NodePtr& p) {
    return p && p->op == Op::kLog && is_var(p->lhs);
  };
  if (n.op != Op::kDiv || n.lhs->op != Op::kConst || n.lhs->value != 1) return std::nullopt;
  const NodePtr& d = n.rhs;
  if (d->op != Op::kMul) return std::nullopt;
  NodePtr other;
  if (is_var(d->lhs)) {
    other = d->rhs;
  } else if (is_var(d->rhs)) {
    other = d->lhs;
  } else {
    return std::nullopt;
  }
  if (is_log_var(other)) return Rational(1);
  if (other->op == Op::kPow && is_log_var(other->lhs) && other->rhs->op == Op::kConst &&
      other->rhs->value >= 0) {
    return other->rhs->value;
  }
  return std::nullopt;
}

}  // namespace

ApproxFunction ApproxFunction::parse(const std::string& text) {
  ApproxFunction f;
  f.text_ = text;
  f.root_ = Parser(text).parse();
  f.beta_ = match_family(*f.root_);
  return f;
}

ApproxFunction ApproxFunction::log_family(const Rational& beta) {
  if (beta < 0) throw InvalidArgument("log_family: beta must be >= 0");
  return parse("1/(q*log(q)^" + to_string(beta) + ")");
}

RealInterval ApproxFunction::operator()(const RealInterval& q) const { return eval(*root_, q); }

RealInterval ApproxFunction::at(const BigInt& q, mpfr_prec_t prec) const {
  return eval(*root_, RealInterval::from_int(q, prec));
}

RealInterval ApproxFunction::scaled_at(const BigInt& q, mpfr_prec_t prec) const {
  RealInterval qi = RealInterval::from_int(q, prec);
  return qi * eval(*root_, qi);
}

std::size_t ApproxFunction::domain_start() const {
  for (long q = 1; q < 64; ++q) {
    try {
      if (at(BigInt(q)).is_positive()) return static_cast<std::size_t>(q);
    } catch (const InvalidArgument&) {
    }
  }
  throw InvalidArgument("approximation function \"" + text_ +
                        "\" is not positive at any q < 64");
}

MonotonicityCheck ApproxFunction::check_monotone(std::size_t dense_limit,
                                                 std::vector<BigInt> extra) const {
  MonotonicityCheck out;
  const std::size_t start = domain_start();
  std::vector<BigInt> points;
  for (std::size_t q = start; q <= dense_limit; ++q) points.emplace_back(static_cast<unsigned long>(q));
  for (auto& e : extra) {
    if (e >= start) points.push_back(std::move(e));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::optional<RealInterval> prev;
  for (const auto& q : points) {
    ++out.points;
    RealInterval v(64);
    try {
      v = scaled_at(q, 64);
    } catch (const InvalidArgument&) {
      out.positive = false;
      if (out.offending.empty()) out.offending = to_string(q);
      continue;
    }
    if (!v.is_positive()) {
      out.positive = false;
      if (out.offending.empty()) out.offending = to_string(q);
    }
    if (prev && prev->certainly_less(v)) {
      out.non_increasing = false;
      if (out.offending.empty()) out.offending = to_string(q);
    }
    prev = std::move(v);
  }
  return out;
}

}  // namespace cflab
