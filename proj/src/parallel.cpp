#include "vmv/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace vmv {

namespace {
int g_max_threads = 1;
}

int max_threads() { return g_max_threads; }

void set_max_threads(int n) {
  if (n < 1) throw std::domain_error("max_threads: need n >= 1");
  g_max_threads = n;
}

void run_blocks(std::size_t nblocks, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = static_cast<std::size_t>(g_max_threads);
  if (workers > nblocks) workers = nblocks;
  if (workers <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto body = [&]() {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks || failed.load()) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace vmv
