#ifndef OPZ_PARALLEL_HPP
#define OPZ_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace opz {

/// Worker count: OPZ_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results by index so output order never
/// depends on scheduling. The exception from the lowest failing index is
/// rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace opz

#endif  // OPZ_PARALLEL_HPP
