#pragma once

#include <cstddef>
#include <functional>

namespace fracwave {

// Upper bound on worker threads: FRACWAVE_THREADS if set to a positive
// integer, otherwise the hardware concurrency.
unsigned thread_limit();

// Runs body(i) for i in [0, count). Each index writes only its own output
// slot, so results do not depend on scheduling. If any call throws, the
// exception from the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracwave
