#pragma once

#include <cstddef>
#include <functional>

namespace sgof {

/// Worker count from SGOF_THREADS, falling back to hardware concurrency.
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Indices are
/// handed out dynamically; callers write results into slot i so output order
/// never depends on scheduling. The first exception thrown is rethrown after
/// all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace sgof
