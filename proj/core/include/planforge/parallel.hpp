#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace planforge {

// Worker count: PLANFORGE_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
unsigned thread_count();

// Runs fn(i) for i in [0, n). If several calls throw, the exception from the
// lowest index is rethrown, so failures do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for item (a, b) of a master seed.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace planforge
