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

#include "cflab/measures/value_process.hpp"

#include "cflab/error.hpp"

namespace cflab {

Value Value::integer(BigInt v) {
  Value out;
  out.kind = Kind::kInt;
  out.z = std::move(v);
  return out;
}

Value Value::rational(Rational v) {
  Value out;
  v.canonicalize();
  if (v.get_den() == 1) return integer(v.get_num());
  out.kind = Kind::kRational;
  out.q = std::move(v);
  return out;
}

Value Value::real(RealInterval v) {
  Value out;
  out.kind = Kind::kReal;
  out.r = std::move(v);
  return out;
}

RealInterval Value::to_real(mpfr_prec_t prec) const {
  switch (kind) {
    case Kind::kInt: return RealInterval::from_int(z, prec);
    case Kind::kRational: return RealInterval::from_rational(q, prec);
    case Kind::kReal: return *r;
  }
  return RealInterval(prec);
}

Rational Value::to_rational() const {
  if (kind == Kind::kInt) return Rational(z);
  if (kind == Kind::kRational) return q;
  throw InvalidArgument("real-valued entry has no exact rational value");
}

bool Value::is_negative() const {
  switch (kind) {
    case Kind::kInt: return z < 0;
    case Kind::kRational: return q < 0;
    case Kind::kReal: return mpfr_sgn(r->hi().get()) < 0;
  }
  return false;
}

void accumulate(Value& a, const Value& b) {
  using K = Value::Kind;
  if (a.kind == K::kReal || b.kind == K::kReal) {
    const mpfr_prec_t prec = a.kind == K::kReal ? a.r->precision()
                                                : b.r->precision();
    RealInterval sum = a.to_real(prec) + b.to_real(prec);
    a = Value::real(std::move(sum));
    return;
  }
  if (a.kind == K::kRational || b.kind == K::kRational) {
    a = Value::rational(a.to_rational() + b.to_rational());
    return;
  }
  a.z += b.z;
}

namespace {

class DigitValueProcess final : public ValueProcess {
 public:
  DigitValueProcess(std::unique_ptr<DigitSource> source, Observable obs)
      : source_(std::move(source)), obs_(obs) {}

  void next(Value& out) override {
    if (!source_->next(entry_)) {
      out = Value::integer(0);
      ++after_end_;
      return;
    }
    if (obs_ == Observable::kIdentity) {
      if (entry_.log_value) {
        // Only the logarithm is known: enclose the digit through exp.
        out = Value::real(exp(*entry_.log_value));
      } else {
        out.kind = Value::Kind::kInt;
        out.z = entry_.value;
      }
      return;
    }
    if (entry_.log_value) {
      out = Value::real(*entry_.log_value);
    } else if (entry_.value == 1) {
      out = Value::integer(0);
    } else {
      out = Value::real(log(RealInterval::from_int(entry_.value)));
    }
  }

  std::string name() const override {
    return (obs_ == Observable::kLog ? "log " : "") + source_->name();
  }

  nlohmann::json diagnostics() const override {
    nlohmann::json j = nlohmann::json::object();
    if (after_end_) j["values_after_end"] = after_end_;
    return j;
  }

 private:
  std::unique_ptr<DigitSource> source_;
  Observable obs_;
  DigitEntry entry_;
  std::size_t after_end_ = 0;
};

class ConstantProcess final : public ValueProcess {
 public:
  explicit ConstantProcess(const Rational& c) : value_(Value::rational(c)) {
    if (c < 0) throw InvalidArgument("constant process needs c >= 0");
  }
  void next(Value& out) override { out = value_; }
  std::string name() const override { return "constant"; }

 private:
  Value value_;
};

class GeometricGrowthProcess final : public ValueProcess {
 public:
  explicit GeometricGrowthProcess(const Rational& rho) : rho_(rho), cur_(1) {
    if (rho <= 0) throw InvalidArgument("geometric growth needs rho > 0");
  }
  void next(Value& out) override {
    cur_ *= rho_;
    out = Value::rational(cur_);
  }
  std::string name() const override { return "geometric_growth(" + to_string(rho_) + ")"; }

 private:
  Rational rho_;
  Rational cur_;
};

class SumProcess final : public ValueProcess {
 public:
  explicit SumProcess(std::vector<ValueProcessPtr> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw InvalidArgument("sum process needs at least one term");
  }
  void next(Value& out) override {
    terms_[0]->next(out);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      terms_[i]->next(scratch_);
      accumulate(out, scratch_);
    }
  }
  std::string name() const override {
    std::string s = "sum(";
    for (std::size_t i = 0; i < terms_.size(); ++i) s += (i ? "," : "") + terms_[i]->name();
    return s + ")";
  }
  nlohmann::json diagnostics() const override {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : terms_) j.push_back(t->diagnostics());
    return {{"terms", j}};
  }

 private:
  std::vector<ValueProcessPtr> terms_;
  Value scratch_;
};

class SequenceProcess final : public ValueProcess {
 public:
  explicit SequenceProcess(std::vector<Value> values) : values_(std::move(values)) {}
  void next(Value& out) override {
    if (pos_ < values_.size()) {
      out = values_[pos_++];
    } else {
      out = Value::integer(0);
    }
  }
  std::string name() const override { return "sequence"; }

 private:
  std::vector<Value> values_;
  std::size_t pos_ = 0;
};

}  // namespace

ValueProcessPtr digit_value_process(std::unique_ptr<DigitSource> source, Observable obs) {
  return std::make_unique<DigitValueProcess>(std::move(source), obs);
}

ValueProcessPtr constant_process(const Rational& c) { return std::make_unique<ConstantProcess>(c); }

ValueProcessPtr geometric_growth_process(const Rational& rho) {
  return std::make_unique<GeometricGrowthProcess>(rho);
}

ValueProcessPtr sum_process(std::vector<ValueProcessPtr> terms) {
  return std::make_unique<SumProcess>(std::move(terms));
}

ValueProcessPtr sequence_process(std::vector<Value> values) {
  return std::make_unique<SequenceProcess>(std::move(values));
}

}  // namespace cflab
