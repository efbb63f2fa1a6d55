#pragma once

#include <cstddef>
#include <functional>

namespace heraldsim {

/// Worker cap from the HERALD_SIM_THREADS environment variable.
/// Unset, empty, invalid or 0 means auto (hardware concurrency).
std::size_t thread_cap();

/// Runs fn(i) for i in [0, count). Work items are pulled from a shared
/// atomic counter, so callers must make fn(i) depend only on i (results go
/// into preallocated slots indexed by i). max_workers = 0 means thread_cap().
void parallel_for_indexed(std::size_t count, std::size_t max_workers,
                          const std::function<void(std::size_t)>& fn);

} // namespace heraldsim
