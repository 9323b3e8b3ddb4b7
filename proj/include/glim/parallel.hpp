#ifndef GLIM_PARALLEL_HPP
#define GLIM_PARALLEL_HPP

#include <functional>

namespace glim {

// Global cap on worker threads. 1 means fully serial. Results of every
// operation in this library are independent of the cap; it only trades time.
void set_worker_cap(int cap);
int worker_cap();

// Runs fn(i) for i in [begin, end). Work items must be independent; callers
// aggregate results from preallocated per-index slots so output order never
// depends on scheduling.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace glim

#endif
