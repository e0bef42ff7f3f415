#pragma once

#include <cstddef>
#include <functional>

namespace epsball {

// Worker count for a request: explicit value if positive, else the
// EPSBALL_THREADS environment variable, else hardware concurrency.
int resolve_threads(int requested);

// Runs fn(begin, end) over contiguous chunks of [0, n) on the given number
// of workers and joins them all before returning. Chunking only affects
// scheduling; callers write disjoint slots, so output is independent of
// the worker count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace epsball
