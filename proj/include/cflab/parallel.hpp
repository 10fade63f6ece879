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

// Replica fan-out.  Work items are claimed from an atomic counter by up to
// `jobs` threads; results land in a vector indexed by replica, so the output
// never depends on scheduling.  If any replica throws, the error of the lowest
// failing index is rethrown with its index prepended, keeping its class.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace cflab {

// 0 means one thread per hardware thread.
std::size_t resolve_jobs(std::size_t jobs);

// Rethrows `e` with "replica <index>: " prepended, preserving the cflab class.
[[noreturn]] void rethrow_with_replica(std::exception_ptr e, std::size_t index);

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, std::size_t jobs, F&& fn) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(resolve_jobs(jobs), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) rethrow_with_replica(errors[i], i);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cflab
