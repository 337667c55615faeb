#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace seqelim {

// Replications are cut into fixed blocks independent of the worker count.
// Each block is accumulated sequentially in index order and the block
// partials are merged in block order, so the result is bit-identical for any
// number of threads.
inline constexpr std::int64_t kReplicationBlock = 4096;

// 0 means "use std::thread::hardware_concurrency()".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Acc must be default constructible and provide merge(const Acc&).
// body(index, acc) is called once per replication index in [0, count).
template <class Acc, class Body>
Acc reduce_replications(std::int64_t count, unsigned threads, Body&& body) {
  if (count <= 0) return Acc{};
  const std::int64_t blocks = (count + kReplicationBlock - 1) / kReplicationBlock;
  std::vector<Acc> partial(static_cast<std::size_t>(blocks));

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= blocks) return;
      const std::int64_t begin = b * kReplicationBlock;
      const std::int64_t end = std::min(count, begin + kReplicationBlock);
      try {
        Acc& acc = partial[static_cast<std::size_t>(b)];
        for (std::int64_t i = begin; i < end; ++i) body(i, acc);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };

  const unsigned workers = std::min<std::int64_t>(resolve_threads(threads), blocks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Acc total{};
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace seqelim
