#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mahlerkit {

// Runs independent indexed tasks on a fixed number of threads. Results must
// be written by index, which keeps every caller deterministic.
class Executor {
 public:
  explicit Executor(unsigned jobs = 1) : jobs_(std::max(1U, jobs)) {}

  unsigned jobs() const { return jobs_; }

  // Calls task(i) for every i in [0, count). After all threads finish, the
  // exception of the lowest failing index is rethrown.
  template <class F>
  void for_each(std::size_t count, F&& task) const {
    const std::size_t workers = std::min<std::size_t>(jobs_, count);
    if (workers <= 1) {
      for (std::size_t i = 0; i < count; ++i) task(i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failed_index = count;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (i < failed_index) {
              failed_index = i;
              failure = std::current_exception();
            }
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

 private:
  unsigned jobs_;
};

}  // namespace mahlerkit
