#pragma once

#include <cstddef>

namespace simrank::testing {

/// Process-wide heap accounting through a malloc interposer. Only binaries
/// that link alloc_counter.cpp are instrumented.
struct AllocStats {
  std::size_t live_bytes;
  std::size_t peak_bytes;
  std::size_t largest_block;
};

/// Sets the peak and largest block to the current live bytes / zero.
void reset_alloc_peak();
AllocStats alloc_stats();
bool alloc_counter_active();

}  // namespace simrank::testing
