#pragma once

#include <cstddef>
#include <functional>

namespace axelrod {

/// Worker count: AXELROD_LAB_THREADS if set and positive, capped at the
/// hardware concurrency otherwise (at least 1).
std::size_t worker_count();

/// Runs body(k) for k in [0, n) on up to `workers` threads. Each index runs
/// exactly once; the first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace axelrod
