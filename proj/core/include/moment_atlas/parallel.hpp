#pragma once

#include <cstddef>
#include <functional>

namespace moment_atlas {

/// Worker count: MOMENT_ATLAS_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Indices are
/// handed out dynamically; the first exception thrown is rethrown here after
/// all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace moment_atlas
