#include "cutlim/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace cutlim {

namespace {
std::atomic<unsigned> g_workers{0};
thread_local bool t_inside = false;
}

void set_worker_count(unsigned workers) { g_workers.store(workers); }

unsigned worker_count() {
  unsigned w = g_workers.load();
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return w;
}

void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& body) {
  // Nested calls run inline on the worker that issued them.
  const std::size_t workers = t_inside ? 1 : std::min<std::size_t>(worker_count(), tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks);
  auto run = [&] {
    const bool outer = t_inside;
    t_inside = true;
    for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
      try {
        body(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
    t_inside = outer;
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cutlim
