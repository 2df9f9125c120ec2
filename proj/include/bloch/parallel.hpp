#pragma once

#include <cstddef>
#include <functional>

namespace bloch {

/// Worker count: hardware concurrency, capped by BLOCH_IDS_THREADS when set.
std::size_t worker_count();

/// Runs body(begin, end) over fixed chunks of [0, n). Chunk boundaries depend on n only,
/// so any per-chunk reduction combined in chunk order is independent of the thread count.
void parallel_for(std::size_t n, std::size_t chunk, const std::function<void(std::size_t, std::size_t)>& body);
void parallel_for(std::size_t n, std::size_t chunk, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t workers);

}  // namespace bloch
