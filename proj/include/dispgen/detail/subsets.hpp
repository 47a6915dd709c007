#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "dispgen/rational.hpp"

namespace dispgen::detail {

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Lexicographic successor of a k-subset of {0,...,n-1}; false at the last one.
inline bool next_combination(std::vector<std::int32_t>& c, std::int32_t n) {
  const auto k = static_cast<std::int32_t>(c.size());
  std::int32_t i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (std::int32_t j = i + 1; j < k; ++j)
    c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

// Combination with lexicographic rank r among k-subsets of {0,...,n-1}.
inline std::vector<std::int32_t> unrank_combination(std::int64_t n, std::int64_t k,
                                                    BigInt rank) {
  std::vector<std::int32_t> c;
  c.reserve(static_cast<std::size_t>(k));
  std::int64_t next = 0;
  for (std::int64_t slot = 0; slot < k; ++slot) {
    for (std::int64_t v = next;; ++v) {
      const BigInt block = binomial(n - v - 1, k - slot - 1);
      if (rank < block) {
        c.push_back(static_cast<std::int32_t>(v));
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return c;
}

// Checks `body` over all k-subsets of {0,...,n-1}, split into contiguous rank
// ranges across `workers` threads. The result is the conjunction, so it does
// not depend on the worker count; a failed chunk stops the others early.
inline bool all_subsets_satisfy(
    std::int64_t n, std::int64_t k, int workers,
    const std::function<bool(const std::vector<std::int32_t>&)>& body) {
  const BigInt total_big = binomial(n, k);
  if (total_big == 0) return true;
  const std::uint64_t total = total_big.convert_to<std::uint64_t>();
  workers = std::max(1, workers);
  if (static_cast<std::uint64_t>(workers) > total)
    workers = static_cast<int>(total);

  std::atomic<bool> ok{true};
  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::int32_t> subset = unrank_combination(n, k, BigInt(lo));
    for (std::uint64_t r = lo; r < hi && ok.load(std::memory_order_relaxed); ++r) {
      if (!body(subset)) {
        ok.store(false, std::memory_order_relaxed);
        return;
      }
      if (r + 1 < hi) next_combination(subset, static_cast<std::int32_t>(n));
    }
  };

  if (workers == 1) {
    run_range(0, total);
    return ok.load();
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
    const std::uint64_t hi = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
    threads.emplace_back(run_range, lo, hi);
  }
  for (auto& t : threads) t.join();
  return ok.load();
}

}  // namespace dispgen::detail
