#pragma once

#include <functional>

namespace tripod {

/// Thread count: explicit value if > 0, else TRIPOD_THREADS, else 1.
int resolve_threads(int requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first exception is rethrown.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace tripod
