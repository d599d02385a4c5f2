/*
 * Copyright 2026 The rankvar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rankvar {

/// Runs body(begin, end) over contiguous index chunks, one chunk per worker.
/// Each index is visited by exactly one worker, so bodies may write to
/// preallocated per-index slots without synchronization; the caller then
/// reduces the slots sequentially, which keeps results independent of the
/// worker count. The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for(std::size_t n, std::size_t threads, Body&& body) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t workers = threads < n ? threads : n;
  const std::size_t chunk = (n + workers - 1) / workers;

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    pool.emplace_back([&body, &errors, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rankvar
