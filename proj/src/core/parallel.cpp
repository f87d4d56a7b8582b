// Copyright 2026 The MUXQ Toolkit Authors
// SPDX-License-Identifier: Apache-2.0
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

#include "muxq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace muxq {
namespace {

int DefaultThreads() {
  if (const char* env = std::getenv("MUXQ_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int>& ThreadLimit() {
  static std::atomic<int> limit{DefaultThreads()};
  return limit;
}

// Below this much work per call the thread start-up cost dominates.
constexpr std::size_t kMinWorkPerThread = std::size_t{1} << 16;

}  // namespace

int MaxThreads() { return ThreadLimit().load(std::memory_order_relaxed); }

void SetMaxThreads(int n) {
  ThreadLimit().store(n > 0 ? n : DefaultThreads(), std::memory_order_relaxed);
}

void ParallelRows(std::size_t rows, std::size_t work_per_row,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (rows == 0) return;
  const std::size_t total_work = rows * std::max<std::size_t>(work_per_row, 1);
  std::size_t threads = std::min<std::size_t>(
      static_cast<std::size_t>(MaxThreads()),
      std::max<std::size_t>(1, total_work / kMinWorkPerThread));
  threads = std::min(threads, rows);
  if (threads <= 1) {
    fn(0, rows);
    return;
  }
  const std::size_t chunk = (rows + threads - 1) / threads;
  std::vector<std::thread> workers;
  workers.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(rows, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back(fn, begin, end);
  }
  fn(0, std::min(rows, chunk));
  for (auto& w : workers) w.join();
}

}  // namespace muxq
