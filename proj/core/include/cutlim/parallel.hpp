#pragma once

#include <cstddef>
#include <functional>

namespace cutlim {

// Number of worker threads used by the exhaustive routines. Defaults to the
// machine's hardware concurrency. Results never depend on this value: work is
// split into a fixed set of tasks whose partial results are reduced in task
// order.
void set_worker_count(unsigned workers);
unsigned worker_count();

// Runs body(t) exactly once for every t in [0, tasks). Exceptions thrown by a
// task are rethrown on the calling thread (the one from the lowest task index).
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& body);

}  // namespace cutlim
