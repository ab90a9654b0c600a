#pragma once

#include <functional>

namespace commring {

/// Run body(i) for i in [0, n) on up to `jobs` threads. Each index is visited
/// exactly once; results must be written to per-index slots by the caller.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

}  // namespace commring
