#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wmix/hull.hpp"
#include "wmix/mixing.hpp"
#include "wmix/sequence.hpp"

namespace wmix {

/// || (1/(n-m)) sum_{k=m+1}^{n} x_k ||, exact through combo_norm.
double windowed_mean_norm(const VectorSequence& seq, std::int64_t m, std::int64_t n);

struct WindowedMeanReport {
  std::vector<std::pair<std::int64_t, double>> prefix_means;  // (n, ||(1/n) sum_{k<=n}||)
  VerdictInfo verdict;
};

/// Prefix Cesàro means on a geometric grid of n, with the decay verdict.
WindowedMeanReport ergodicity_test(const VectorSequence& seq, double tolerance);

/// max over k in [1, k_max] of || sum_j weights[j] x_{j+k} ||, exact.
double shifted_combo_sup(const VectorSequence& seq, const std::vector<double>& weights,
                         std::int64_t k_max);

struct DiscrepancyCheck {
  double discrepancy = 0.0;  // distance between the window mean and the
                             // window-averaged shifted combinations
  double bound = 0.0;        // 2p/(n-m), p = weight support size
  bool holds = false;
};

/// The telescoping bound: || window mean - window average of the shifted
/// combination || <= 2p/(n-m).  The sequence must satisfy bound <= 1.
DiscrepancyCheck theorem71_discrepancy_check(const VectorSequence& seq,
                                             const std::vector<double>& weights,
                                             std::int64_t m, std::int64_t n);

struct WindowCheckEntry {
  std::int64_t m = 0, n = 0;
  double mean_norm = 0.0;
};

struct ThresholdCheckResult {
  bool refused = false;          // the shifted-combination hypothesis failed
  std::int64_t offending_k = 0;  // shift witnessing the refusal
  double sup_value = 0.0;        // sup_k || sum_j w_j x_{j+k} ||
  double epsilon = 0.0;
  std::int64_t min_span = 0;  // ceil(4p/eps): windows at least this long are checked
  std::vector<WindowCheckEntry> windows;  // every window tested
  std::int64_t violations = 0;            // mean > eps among them (a defect if > 0)
  std::int64_t max_span_verified = 0;
};

/// Checks || window mean || <= eps for every sampled window with
/// n - m >= 4p/eps, under the hypothesis sup_k || sum w_j x_{j+k} || <= eps/2.
/// Windows: endpoints on a geometric grid of ratio 1.2 plus 100 random ones.
ThresholdCheckResult theorem71_threshold_check(const VectorSequence& seq,
                                               const std::vector<double>& weights,
                                               double epsilon, std::uint64_t seed = 0);

struct Corollary72Report {
  HullCertificate hull;
  double epsilon = 0.0;          // hull value, the certified hull norm
  double shift_constant = 0.0;   // the supplied (sampled) c
  double shifted_sup = 0.0;      // sup_k over the found weights
  double shifted_slack = 0.0;    // max(0, shifted_sup - c * epsilon)
  bool shift_bound_consistent = false;
  ThresholdCheckResult threshold;
  bool certified = false;  // windowed means certified below 2 c epsilon
};

/// The quantitative (ff) => (e) chain: hull weights pushed through the
/// domination constant into the window threshold check at 2 c epsilon.
Corollary72Report corollary72_chain(const VectorSequence& seq, double shift_bound_c,
                                    double hull_tol, std::int64_t p_max,
                                    std::uint64_t seed = 0);

}  // namespace wmix
