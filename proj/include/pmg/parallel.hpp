// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace pmg
{

/// Runs f(index, worker) for index in [0, n) on up to `threads` workers with
/// a static block partition. Callers guarantee that concurrent iterations
/// write disjoint locations, so results do not depend on the thread count.
template <typename F>
void parallel_for(std::int64_t n, int threads, F &&f)
{
  if (n <= 0)
    return;
  if (threads <= 1 || n == 1)
  {
    for (std::int64_t i = 0; i < n; ++i)
      f(i, 0);
    return;
  }
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
  {
    const std::int64_t begin = n * w / workers;
    const std::int64_t end = n * (w + 1) / workers;
    pool.emplace_back([&f, begin, end, w]() {
      for (std::int64_t i = begin; i < end; ++i)
        f(i, w);
    });
  }
  for (auto &t : pool)
    t.join();
}

}  // namespace pmg
