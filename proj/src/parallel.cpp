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

#include "cflab/parallel.hpp"

#include "cflab/error.hpp"

namespace cflab {

std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void rethrow_with_replica(std::exception_ptr e, std::size_t index) {
  const std::string prefix = "replica " + std::to_string(index) + ": ";
  try {
    std::rethrow_exception(e);
  } catch (const UndecidableAtCap& x) {
    throw UndecidableAtCap(prefix + x.what());
  } catch (const ConfigError& x) {
    throw ConfigError(prefix + x.what());
  } catch (const InvalidArgument& x) {
    throw InvalidArgument(prefix + x.what());
  } catch (const std::exception& x) {
    throw Error(prefix + x.what());
  }
}

}  // namespace cflab
