#pragma once

#include <cstddef>
#include <functional>

namespace betaspec {

/// Clamp a requested worker count to [1, hardware_concurrency].
int resolve_threads(int requested);

/// Run fn(i) for i in [0, n) across `threads` workers. Execution order
/// is unspecified; callers must write to disjoint slots. Work is split
/// into fixed-size chunks that do not depend on the worker count, so a
/// deterministic chunk-indexed reduction gives identical results for
/// any thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Fixed partition of [0, n) into `chunks` contiguous ranges; the
/// partition depends only on (n, chunks), never on the thread count.
struct ChunkRange {
    std::size_t begin;
    std::size_t end;
};
ChunkRange chunk_range(std::size_t n, std::size_t chunks, std::size_t chunk);

} // namespace betaspec
