#pragma once

#include <cstdint>
#include <vector>

namespace wmix::kernels {

/// All offsets o with word[o .. o+|pattern|-1] == pattern, in increasing order.
std::vector<std::int64_t> find_occurrences_serial(const std::vector<std::uint8_t>& word,
                                                  const std::vector<std::uint8_t>& pattern);
std::vector<std::int64_t> find_occurrences_parallel(const std::vector<std::uint8_t>& word,
                                                    const std::vector<std::uint8_t>& pattern);

/// All k in [0, k_max] with member[f + k] != 0 for every f in shifts.
std::vector<std::int64_t> translate_scan_serial(const std::vector<std::uint8_t>& member,
                                                const std::vector<std::int64_t>& shifts,
                                                std::int64_t k_max);
std::vector<std::int64_t> translate_scan_parallel(const std::vector<std::uint8_t>& member,
                                                  const std::vector<std::int64_t>& shifts,
                                                  std::int64_t k_max);

}  // namespace wmix::kernels
