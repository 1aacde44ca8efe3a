#pragma once

#include <cstddef>
#include <functional>

namespace tssb {

/// Static block partition of an index range over worker threads.
///
/// Each index is handled by exactly one worker and bodies must only write
/// index-owned slots, so results never depend on the thread count. If any
/// block throws, the exception from the lowest-numbered block is rethrown.
class Executor {
public:
  explicit Executor(unsigned threads = 1) : threads_(threads == 0 ? 1 : threads) {}

  [[nodiscard]] unsigned threads() const noexcept { return threads_; }

  /// Calls body(begin, end) on disjoint blocks covering [0, n).
  void for_blocks(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)> &body) const;

  /// Calls body(i) for every i in [0, n).
  void for_each(std::size_t n, const std::function<void(std::size_t)> &body) const;

private:
  unsigned threads_;
};

} // namespace tssb
