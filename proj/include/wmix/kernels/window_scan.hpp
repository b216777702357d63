#pragma once

#include <cstdint>
#include <vector>

namespace wmix::kernels {

/// Best window found by the density scan: card(A ∩ [a, b]) / (b - a + 1)
/// maximal among windows of length >= min_len.  Ties resolve to the shorter
/// window, then the smaller start, so results are schedule-independent.
struct BestWindow {
  std::int64_t a = 0, b = -1;
  std::int64_t count = 0;
  double density() const { return b < a ? 0.0 : double(count) / double(b - a + 1); }
};

/// prefix[i] = number of selected positions in [lo, lo + i - 1]; prefix[0] = 0.
/// Windows are measured in positions lo..hi, passed as offsets into prefix.
/// Only lengths in [min_len, 2*min_len - 1] are scanned: a window of length
/// >= 2*min_len splits into two halves of length >= min_len, one of which has
/// at least the same density, so the restricted scan is an exact maximizer.
BestWindow max_density_window_serial(const std::vector<std::int32_t>& prefix,
                                     std::int64_t lo, std::int64_t hi,
                                     std::int64_t min_len);
BestWindow max_density_window_parallel(const std::vector<std::int32_t>& prefix,
                                       std::int64_t lo, std::int64_t hi,
                                       std::int64_t min_len);

/// Test-only oracle: scans every window of every length >= min_len, O(n^2).
BestWindow max_density_window_bruteforce(const std::vector<std::int32_t>& prefix,
                                         std::int64_t lo, std::int64_t hi,
                                         std::int64_t min_len);

}  // namespace wmix::kernels
