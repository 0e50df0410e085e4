#pragma once

#include <cstddef>
#include <functional>

namespace gupest {

/// Worker budget: GUPEST_THREADS when set (>=1), hardware concurrency
/// otherwise.
int thread_budget();

/// Runs fn(0..n-1) on up to `threads` workers (0 = thread_budget()). Index
/// assignment is dynamic; callers that need ordered output write into
/// index-addressed slots. The first worker exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

}  // namespace gupest
