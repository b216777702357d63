#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wmix/index_set.hpp"

namespace wmix {

/// Finite-horizon stand-ins for D*, D_* and BD*.  All estimates are maxima or
/// minima of exact counting ratios; nothing here claims a limit.
struct DensityProfile {
  std::vector<std::pair<std::int64_t, double>> ratios;  // sampled (n, card/n)
  double upper_estimate = 0.0;   // max of card(A ∩ [1,n])/n over n in [tail_start, horizon]
  double lower_estimate = 0.0;   // min over the same range
  double banach_estimate = 0.0;  // max window density over lengths >= window_schedule
  std::int64_t window_schedule = 0;
  std::int64_t tail_start = 0;
};

DensityProfile density_profile(const FiniteIndexSet& a, std::int64_t tail_start);

/// Exact max of card(A ∩ [a,b])/(b-a+1) over windows of length >= min_window.
double banach_upper_density(const FiniteIndexSet& a, std::int64_t min_window);
/// Same, also reporting the maximizing window [a, b].
struct BanachWindow {
  double density = 0.0;
  std::int64_t a = 0, b = -1, count = 0;
};
BanachWindow banach_upper_density_window(const FiniteIndexSet& a, std::int64_t min_window);

/// Largest interval length needed to meet A: max of consecutive gaps, the
/// head [1, first] and the tail (last, horizon].  Empty set -> nullopt.
std::optional<std::int64_t> relative_density_gap(const FiniteIndexSet& a);

/// N ∪ {p, 2p, ...} clipped to the horizon; the result has gap <= p.
FiniteIndexSet augment_with_multiples(const FiniteIndexSet& n, std::int64_t p);

/// max_j k_j / j; finite values certify positive lower density at this scale.
double subsequence_growth_ratio(const FiniteIndexSet& k);

/// Koopman-von Neumann extraction: cut points and the exceptional set E such
/// that off E beyond c_m every |a_k| stays below tau_m.
struct KvnReport {
  bool refused = false;              // Cesàro means of |a_k| do not decay
  FiniteIndexSet exceptional;        // E
  std::vector<std::int64_t> cut_points;  // c_1 < c_2 < ... (one per usable tau)
  std::vector<double> thresholds;        // the taus actually used
  bool schedule_truncated = false;
  std::vector<double> off_e_max;     // per m: max |a_k| over k > c_m, k not in E
  DensityProfile e_profile;
  std::vector<std::pair<std::int64_t, double>> cesaro_means;  // (n, (1/n) sum |a_k|)
};

KvnReport kvn_extract(const std::vector<double>& a,
                      const std::vector<double>& threshold_schedule,
                      std::int64_t density_tail_start = 0);

/// All k >= 0 with F + k ⊆ B (k + max(F) <= horizon); exhaustive and exact.
std::vector<std::int64_t> translate_check(const FiniteIndexSet& f, const FiniteIndexSet& b);

}  // namespace wmix
