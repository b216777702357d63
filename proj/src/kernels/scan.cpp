#include "wmix/kernels/scan.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wmix::kernels {

namespace {

bool match_at(const std::vector<std::uint8_t>& word, const std::vector<std::uint8_t>& pattern,
              std::int64_t o) {
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (word[o + i] != pattern[i]) return false;
  return true;
}

bool translate_ok(const std::vector<std::uint8_t>& member,
                  const std::vector<std::int64_t>& shifts, std::int64_t k) {
  for (std::int64_t f : shifts)
    if (!member[f + k]) return false;
  return true;
}

// Chunked collect keeps output order independent of the thread schedule.
template <class Pred>
std::vector<std::int64_t> collect_parallel(std::int64_t lo, std::int64_t hi, Pred pred) {
  if (hi < lo) return {};
  const std::int64_t span = hi - lo + 1;
#ifdef _OPENMP
  const int chunks = std::max(1, std::min<int>(4 * omp_get_max_threads(),
                                               int(std::min<std::int64_t>(span, 256))));
#else
  const int chunks = 1;
#endif
  std::vector<std::vector<std::int64_t>> per(chunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    const std::int64_t a = lo + span * c / chunks;
    const std::int64_t b = lo + span * (c + 1) / chunks - 1;
    for (std::int64_t k = a; k <= b; ++k)
      if (pred(k)) per[c].push_back(k);
  }
  std::vector<std::int64_t> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace

std::vector<std::int64_t> find_occurrences_serial(const std::vector<std::uint8_t>& word,
                                                  const std::vector<std::uint8_t>& pattern) {
  std::vector<std::int64_t> out;
  if (pattern.empty() || pattern.size() > word.size()) return out;
  const std::int64_t last = std::int64_t(word.size() - pattern.size());
  for (std::int64_t o = 0; o <= last; ++o)
    if (match_at(word, pattern, o)) out.push_back(o);
  return out;
}

std::vector<std::int64_t> find_occurrences_parallel(const std::vector<std::uint8_t>& word,
                                                    const std::vector<std::uint8_t>& pattern) {
  if (pattern.empty() || pattern.size() > word.size()) return {};
  const std::int64_t last = std::int64_t(word.size() - pattern.size());
  return collect_parallel(0, last,
                          [&](std::int64_t o) { return match_at(word, pattern, o); });
}

std::vector<std::int64_t> translate_scan_serial(const std::vector<std::uint8_t>& member,
                                                const std::vector<std::int64_t>& shifts,
                                                std::int64_t k_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 0; k <= k_max; ++k)
    if (translate_ok(member, shifts, k)) out.push_back(k);
  return out;
}

std::vector<std::int64_t> translate_scan_parallel(const std::vector<std::uint8_t>& member,
                                                  const std::vector<std::int64_t>& shifts,
                                                  std::int64_t k_max) {
  return collect_parallel(0, k_max,
                          [&](std::int64_t k) { return translate_ok(member, shifts, k); });
}

}  // namespace wmix::kernels
