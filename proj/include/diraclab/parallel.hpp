#pragma once

#include <functional>

namespace diraclab {

/// Runs task(i) for i in [0, count) on up to `threads` threads. Exceptions are
/// collected and the one from the lowest index is rethrown after all tasks end.
void parallel_for(int count, int threads, const std::function<void(int)>& task);

}  // namespace diraclab
