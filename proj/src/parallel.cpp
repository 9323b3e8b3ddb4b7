#include "glim/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "glim/errors.hpp"

namespace glim {
namespace {

std::atomic<int> g_worker_cap{1};

}  // namespace

void set_worker_cap(int cap) {
  if (cap < 1) throw UsageError("worker cap must be at least 1");
  g_worker_cap.store(cap);
}

int worker_cap() { return g_worker_cap.load(); }

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
  int count = end - begin;
  if (count <= 0) return;
  int workers = worker_cap();
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }

  std::atomic<int> cursor{begin};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto body = [&]() {
    for (;;) {
      int i = cursor.fetch_add(1);
      if (i >= end) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace glim
