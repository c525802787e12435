#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace focus {

/// Applies `fn` to every element of `inputs` on a pool of threads. Output
/// order matches input order. The first exception thrown by any worker is
/// rethrown after all workers have stopped.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& inputs, Fn fn, unsigned threads = 0)
    -> std::vector<std::invoke_result_t<Fn, const In&>> {
  using Out = std::invoke_result_t<Fn, const In&>;
  std::vector<Out> outputs(inputs.size());
  if (inputs.empty()) return outputs;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(inputs.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size() || failed.load()) return;
      try {
        outputs[i] = fn(inputs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return outputs;
}

}  // namespace focus
