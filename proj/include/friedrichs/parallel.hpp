// parallel.hpp - fan-out over independent indices on a few std::threads

#pragma once

#include <cstddef>
#include <functional>

namespace friedrichs {

// Worker count: FRIEDRICHS_THREADS if set and positive, otherwise the hardware concurrency.
std::size_t worker_count();

// Calls body(i) for every i in [0, count). Results must be written to disjoint slots; the
// first exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace friedrichs
