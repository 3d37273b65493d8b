// Copyright 2026 The staircase-dp Authors
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

#ifndef STAIRCASE_CORE_PARALLEL_HPP_
#define STAIRCASE_CORE_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace staircase {

// Worker-count cap: STAIRCASE_DP_THREADS when set (>= 1), hardware
// concurrency otherwise. Controls parallelism only; results of sharded
// computations never depend on it.
inline int thread_cap() {
  if (const char* env = std::getenv("STAIRCASE_DP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(shard) for every shard in [0, shards), distributing shards over
// at most thread_cap() workers. fn must not throw.
template <typename Fn>
void run_sharded(int shards, Fn&& fn) {
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int shard = next.fetch_add(1);
      if (shard >= shards) return;
      fn(shard);
    }
  };
  int workers = std::min(thread_cap(), shards);
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace staircase

#endif  // STAIRCASE_CORE_PARALLEL_HPP_
