#include "wmix/kernels/window_scan.hpp"

#include <stdexcept>

namespace wmix::kernels {

namespace {

// count1/len1 > count2/len2 as exact integers, with the shorter-then-earlier
// tie break.  Counts and lengths stay far below 2^31, so products fit int64.
bool better(std::int64_t count1, std::int64_t a1, std::int64_t len1,
            std::int64_t count2, std::int64_t a2, std::int64_t len2) {
  if (len2 <= 0) return true;
  const std::int64_t lhs = count1 * len2, rhs = count2 * len1;
  if (lhs != rhs) return lhs > rhs;
  if (len1 != len2) return len1 < len2;
  return a1 < a2;
}

BestWindow scan_length(const std::vector<std::int32_t>& prefix, std::int64_t lo,
                       std::int64_t hi, std::int64_t len) {
  BestWindow best;
  std::int64_t best_len = 0;
  for (std::int64_t a = lo; a + len - 1 <= hi; ++a) {
    const std::int64_t c = prefix[a - lo + len] - prefix[a - lo];
    if (better(c, a, len, best.count, best.a, best_len)) {
      best = {a, a + len - 1, c};
      best_len = len;
    }
  }
  return best;
}

}  // namespace

BestWindow max_density_window_serial(const std::vector<std::int32_t>& prefix,
                                     std::int64_t lo, std::int64_t hi,
                                     std::int64_t min_len) {
  if (min_len < 1 || hi - lo + 1 < min_len)
    throw std::invalid_argument("max_density_window: min_len exceeds span");
  BestWindow best;
  std::int64_t best_len = 0;
  const std::int64_t top = std::min(2 * min_len - 1, hi - lo + 1);
  for (std::int64_t len = min_len; len <= top; ++len) {
    BestWindow cand = scan_length(prefix, lo, hi, len);
    if (cand.b >= cand.a &&
        better(cand.count, cand.a, len, best.count, best.a, best_len)) {
      best = cand;
      best_len = len;
    }
  }
  return best;
}

BestWindow max_density_window_parallel(const std::vector<std::int32_t>& prefix,
                                       std::int64_t lo, std::int64_t hi,
                                       std::int64_t min_len) {
  if (min_len < 1 || hi - lo + 1 < min_len)
    throw std::invalid_argument("max_density_window: min_len exceeds span");
  const std::int64_t top = std::min(2 * min_len - 1, hi - lo + 1);
  const std::int64_t nlen = top - min_len + 1;
  std::vector<BestWindow> per_len(static_cast<std::size_t>(nlen));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < nlen; ++i)
    per_len[i] = scan_length(prefix, lo, hi, min_len + i);
  BestWindow best;
  std::int64_t best_len = 0;
  for (std::int64_t i = 0; i < nlen; ++i) {
    const BestWindow& cand = per_len[i];
    if (cand.b < cand.a) continue;
    const std::int64_t len = cand.b - cand.a + 1;
    if (better(cand.count, cand.a, len, best.count, best.a, best_len)) {
      best = cand;
      best_len = len;
    }
  }
  return best;
}

BestWindow max_density_window_bruteforce(const std::vector<std::int32_t>& prefix,
                                         std::int64_t lo, std::int64_t hi,
                                         std::int64_t min_len) {
  BestWindow best;
  std::int64_t best_len = 0;
  for (std::int64_t len = min_len; len <= hi - lo + 1; ++len) {
    for (std::int64_t a = lo; a + len - 1 <= hi; ++a) {
      const std::int64_t c = prefix[a - lo + len] - prefix[a - lo];
      if (better(c, a, len, best.count, best.a, best_len)) {
        best = {a, a + len - 1, c};
        best_len = len;
      }
    }
  }
  return best;
}

}  // namespace wmix::kernels
