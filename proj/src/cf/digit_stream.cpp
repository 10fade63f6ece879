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

#include "cflab/cf/digit_stream.hpp"

#include "cflab/error.hpp"

namespace cflab {

namespace {

class FiniteSource final : public DigitSource {
 public:
  FiniteSource(std::vector<BigInt> digits, std::string name)
      : digits_(std::move(digits)), name_(std::move(name)) {
    for (const auto& d : digits_) {
      if (d < 1) throw InvalidArgument("digits must be >= 1, got " + d.get_str());
    }
  }
  bool next(DigitEntry& out) override {
    if (pos_ >= digits_.size()) return false;
    out.value = digits_[pos_++];
    out.log_value.reset();
    return true;
  }
  std::string name() const override { return name_; }

 private:
  std::vector<BigInt> digits_;
  std::size_t pos_ = 0;
  std::string name_;
};

class IndexedSource final : public DigitSource {
 public:
  IndexedSource(std::function<BigInt(std::size_t)> gen, std::string name)
      : gen_(std::move(gen)), name_(std::move(name)) {}
  bool next(DigitEntry& out) override {
    out.value = gen_(++n_);
    out.log_value.reset();
    if (out.value < 1) {
      throw InvalidArgument("generator produced digit " + out.value.get_str() + " at n=" +
                            std::to_string(n_));
    }
    return true;
  }
  std::string name() const override { return name_; }

 private:
  std::function<BigInt(std::size_t)> gen_;
  std::size_t n_ = 0;
  std::string name_;
};

}  // namespace

DigitStream DigitStream::finite(std::vector<BigInt> digits, std::string name) {
  return from_source(std::make_unique<FiniteSource>(std::move(digits), std::move(name)));
}

DigitStream DigitStream::indexed(std::function<BigInt(std::size_t)> gen, std::string name) {
  return from_source(std::make_unique<IndexedSource>(std::move(gen), std::move(name)));
}

DigitStream DigitStream::from_source(std::unique_ptr<DigitSource> source) {
  if (!source) throw InvalidArgument("null digit source");
  DigitStream s;
  s.name_ = source->name();
  s.source_ = std::move(source);
  return s;
}

bool DigitStream::produce_until(std::size_t n) {
  DigitEntry entry;
  while (values_.size() < n) {
    if (ended_) return false;
    if (!source_->next(entry)) {
      ended_ = true;
      return false;
    }
    if (entry.log_value) {
      values_.emplace_back(0);
      logs_.resize(values_.size());
      logs_.back() = std::move(entry.log_value);
      entry.log_value.reset();
    } else {
      if (entry.value < 1) throw InvalidArgument("digit source produced a digit < 1");
      values_.push_back(entry.value);
    }
  }
  return true;
}

bool DigitStream::has(std::size_t n) { return produce_until(n); }

bool DigitStream::is_exact(std::size_t n) {
  if (n == 0 || !produce_until(n)) throw StreamExhausted(n, values_.size());
  return values_[n - 1] != 0;
}

const BigInt& DigitStream::digit(std::size_t n) {
  if (n == 0 || !produce_until(n)) throw StreamExhausted(n, values_.size());
  const BigInt& d = values_[n - 1];
  if (d == 0) {
    throw Error("digit " + std::to_string(n) + " of stream '" + name_ +
                "' is known only through its logarithm");
  }
  return d;
}

RealInterval DigitStream::log_digit(std::size_t n, mpfr_prec_t prec) {
  if (n == 0 || !produce_until(n)) throw StreamExhausted(n, values_.size());
  const BigInt& d = values_[n - 1];
  if (d == 0) return *logs_[n - 1];
  if (d == 1) return RealInterval(prec);
  return log(RealInterval::from_int(d, prec));
}

std::vector<BigInt> DigitStream::prefix(std::size_t n) {
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(digit(k));
  return out;
}

}  // namespace cflab
