#pragma once

#include <cstddef>
#include <functional>

namespace tsme {

/// Worker count: TSME_THREADS if set and positive, otherwise the hardware
/// concurrency (TSME_THREADS=0 also means auto).
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// the first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tsme
