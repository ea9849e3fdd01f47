#pragma once

#include <cstddef>
#include <functional>

namespace ellk {

// Worker count used by parallel_for; 0 selects the hardware concurrency.
void set_parallelism(unsigned workers);
unsigned parallelism();

// Runs body(i) for i in [0, count). Each index runs exactly once; callers that
// need deterministic output write into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ellk
