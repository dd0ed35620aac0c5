#pragma once

#include <cstddef>
#include <functional>

namespace gst {

// Worker count: GST_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
unsigned thread_count();

// Calls body(i) for i in [0, n) on up to thread_count() threads. Each index
// is visited exactly once; callers write results into per-index slots so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gst
