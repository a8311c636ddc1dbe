#pragma once

#include <cstddef>
#include <functional>

namespace stiefelgeo {

/// Worker count: STIEFEL_GEO_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// Indices are split into contiguous ranges; body must write only to slot i.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace stiefelgeo
