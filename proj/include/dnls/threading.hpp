#pragma once

#include <cstddef>
#include <functional>

namespace dnls {

// Number of worker threads: min(hardware, DNLS_THREADS when set).
int worker_count();

// Runs fn(i) for i in [0, n) across worker threads. fn must be pure with
// respect to shared state except its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace dnls
