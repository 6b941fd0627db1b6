#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

#include "ginibrenet/rng.hpp"

namespace ginibrenet {

// Runs fn(rng, rep) for rep = 0..n-1, each replication on its own stream
// RngStream(seed, rep). Results are stored by replication index, so the
// output is identical for every thread count.
template <class Fn>
auto replicate(std::size_t n, std::uint64_t seed, unsigned threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, RngStream&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, RngStream&, std::size_t>;
  std::vector<Result> out(n);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t rep = begin; rep < end; ++rep) {
      RngStream rng(seed, rep);
      out[rep] = fn(rng, rep);
    }
  };
  if (threads <= 1 || n < 2) {
    run_range(0, n);
    return out;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ginibrenet
