#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace bockstein {

inline unsigned default_threads() {
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : std::min(hw, 16u);
}

/// Splits [0, total) into at most `threads` contiguous chunks and runs
/// fn(begin, end) -> Partial on each. Partials come back in chunk order, so any
/// associative merge over them is independent of the thread count as long as the
/// merge itself is commutative.
template <class Partial, class Fn>
std::vector<Partial> map_ranges(std::uint64_t total, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  const std::uint64_t chunks = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1));
  std::vector<Partial> partials(chunks);
  if (chunks == 1) {
    partials[0] = fn(std::uint64_t{0}, total);
    return partials;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::uint64_t i = 0; i < chunks; ++i) {
    const auto begin = total * i / chunks;
    const auto end = total * (i + 1) / chunks;
    workers.emplace_back([&, i, begin, end] {
      try {
        partials[i] = fn(begin, end);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers)
    w.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return partials;
}

} // namespace bockstein
