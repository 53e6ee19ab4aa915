#pragma once

#include <cstddef>
#include <functional>

namespace bmetro {

/// Worker count: BMETRO_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_cap();

/// Runs body(i) for i in [0, count) on up to thread_cap() threads. Each
/// index is visited exactly once; the first exception is rethrown after
/// all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bmetro
