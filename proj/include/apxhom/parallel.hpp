#pragma once

// Static rank-range sharding. Shard boundaries depend only on the problem
// size and the thread cap, and every reduction is an exact integer sum or an
// index-ordered merge, so results never depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace apxhom {

namespace detail {
inline std::atomic<unsigned>& thread_limit_storage() {
  static std::atomic<unsigned> limit{0};
  return limit;
}
}  // namespace detail

/// Caps the number of worker threads used by library operations (0 = hardware concurrency).
inline void set_thread_limit(unsigned limit) { detail::thread_limit_storage().store(limit); }

inline unsigned thread_limit() {
  unsigned limit = detail::thread_limit_storage().load();
  if (limit == 0) limit = std::max(1u, std::thread::hardware_concurrency());
  return limit;
}

/// Calls body(begin, end, shard) over contiguous shards of [0, n).
template <class Body>
void parallel_for_shards(std::size_t n, Body&& body, std::size_t min_shard = 4096) {
  std::size_t shards = std::min<std::size_t>(thread_limit(), (n + min_shard - 1) / std::max<std::size_t>(min_shard, 1));
  if (shards <= 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(shards);
  workers.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    std::size_t begin = n * s / shards;
    std::size_t end = n * (s + 1) / shards;
    workers.emplace_back([&, begin, end, s] {
      try {
        body(begin, end, s);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Exact sum of count(i) over i in [0, n).
template <class Count>
std::uint64_t parallel_count(std::size_t n, Count&& count, std::size_t min_shard = 4096) {
  std::vector<std::uint64_t> partial(std::max(1u, thread_limit()), 0);
  parallel_for_shards(
      n,
      [&](std::size_t begin, std::size_t end, std::size_t shard) {
        std::uint64_t local = 0;
        for (std::size_t i = begin; i < end; ++i) local += count(i);
        partial[shard] = local;
      },
      min_shard);
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace apxhom
