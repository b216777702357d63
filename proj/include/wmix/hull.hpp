#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wmix/index_set.hpp"
#include "wmix/sequence.hpp"

namespace wmix {

/// Output of the min-norm-point solve over conv{x_k : k in indices}.
/// The linear-minimization gap certifies achieved_norm^2 - min^2 <= gap.
struct HullCertificate {
  std::vector<std::int64_t> indices;
  std::vector<double> weights;  // simplex weights over `indices`
  double achieved_norm = 0.0;
  double gap = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;

  /// Certified interval for the distance from 0 to the hull:
  /// [max(0, achieved - gap/achieved), achieved].
  double certified_lower() const;
};

/// Conditional-gradient (away-step) iteration with exact line search on the
/// quadratic || sum lambda_i x_i ||^2; stops at gap <= tol.
HullCertificate min_norm_in_hull(const VectorSequence& seq,
                                 const std::vector<std::int64_t>& indices, double tol = 1e-10,
                                 std::int64_t max_iter = 100000);
HullCertificate min_norm_in_hull(const VectorSequence& seq, const FiniteIndexSet& indices,
                                 double tol = 1e-10, std::int64_t max_iter = 100000);

/// Hahn-Banach style separating functional: if the hull certifiably excludes
/// a ball of radius ~delta around 0, returns y/||y|| with per-element pairing
/// at least achieved - gap/achieved.  Nothing is returned when the test is
/// inconclusive at level delta.
struct SeparationWitness {
  Functional functional;
  double pairing_floor = 0.0;  // certified lower bound for all pairings
  HullCertificate certificate;
};
std::optional<SeparationWitness> separation_witness(const VectorSequence& seq,
                                                    const std::vector<std::int64_t>& indices,
                                                    double delta);

struct BanachSaksSelection {
  std::vector<std::int64_t> selected;
  bool stalled = false;
  std::int64_t stalled_after = 0;  // selections made before the stall
};

/// Greedy near-orthogonal subsequence: after selecting y_1..y_m with partial
/// sum S_m, the next index is the first remaining candidate with
/// |<S_m, x_k>| <= 1/(m+1).  Guarantees ||S_n||^2 <= n (M^2 + 2) per prefix.
BanachSaksSelection banach_saks_select(const VectorSequence& seq,
                                       const std::vector<std::int64_t>& candidates,
                                       std::int64_t target_count);

struct PrefixBound {
  std::int64_t n = 0;
  double mean_norm_sq = 0.0;  // || (1/n) sum y ||^2
  double bound = 0.0;         // (M^2 + 2) / n
};
std::vector<PrefixBound> banach_saks_prefix_bounds(const VectorSequence& seq,
                                                   const std::vector<std::int64_t>& selected);

}  // namespace wmix
