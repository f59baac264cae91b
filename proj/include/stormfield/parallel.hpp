#pragma once

#include <cstddef>
#include <functional>

namespace stormfield {

// Worker count: min(hardware_concurrency, STORMFIELD_THREADS). Never zero.
std::size_t worker_count();

// Splits [0, n) into contiguous chunks, one worker thread per chunk.
// Chunk boundaries depend only on n and worker_count(), so callers that
// write disjoint outputs per index stay deterministic under any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace stormfield
