#pragma once

#include <cstddef>
#include <functional>

namespace elastica {

/// Number of worker threads the library may use. Honors ELASTICA_THREADS when set
/// to a positive integer, otherwise std::thread::hardware_concurrency().
unsigned worker_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous blocks, one per
/// worker; callers that write results into slot i get deterministic output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace elastica
