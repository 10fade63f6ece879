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

#pragma once

#include <stdexcept>
#include <string>

namespace cflab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to a library operation (digit < 1, x outside (0,1), ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A finite digit stream ran out before the requested index.
class StreamExhausted : public Error {
 public:
  StreamExhausted(std::size_t requested, std::size_t available)
      : Error("digit stream exhausted: requested digit " + std::to_string(requested) +
              ", stream has " + std::to_string(available)),
        requested_(requested),
        available_(available) {}

  std::size_t requested() const { return requested_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t requested_;
  std::size_t available_;
};

// Interval refinement hit its hard cap without deciding the predicate.
class UndecidableAtCap : public Error {
 public:
  using Error::Error;
};

// Configuration / schema violation (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cflab
