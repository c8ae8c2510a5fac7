#pragma once

#include <cstddef>
#include <functional>

namespace wavebound {

/// Thread count from an explicit request (> 0), else WAVEBOUND_THREADS, else
/// the hardware concurrency.
int resolve_threads(int requested = 0);

/// Runs body(i) for i in [0, count) on `threads` workers with a static
/// round-robin split. Results must be written to per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace wavebound
