// Copyright 2026 The seqpivot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQPIVOT_PARALLEL_HPP_
#define SEQPIVOT_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace seqpivot {

// Worker count: SEQPIVOT_THREADS when set to a positive integer, otherwise
// (unset or 0) the hardware concurrency.
unsigned worker_count();

// Evaluates fn(0), ..., fn(count - 1), possibly concurrently, and returns the
// results by index, so the output never depends on scheduling. The first
// exception (lowest index) is rethrown after all workers finish.
template <typename Fn>
auto parallel_map(std::size_t count, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(count);
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  std::vector<std::exception_ptr> errors(count);

  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < count; k += stride) {
      try {
        slots[k].emplace(fn(k));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run_range, w, workers);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace seqpivot

#endif  // SEQPIVOT_PARALLEL_HPP_
