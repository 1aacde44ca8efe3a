#include "tssb/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace tssb {

void Executor::for_blocks(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t)> &body) const {
  if (n == 0)
    return;
  const std::size_t workers = std::min<std::size_t>(threads_, n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t block = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end)
      break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

void Executor::for_each(std::size_t n,
                        const std::function<void(std::size_t)> &body) const {
  for_blocks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      body(i);
  });
}

} // namespace tssb
