#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wmix/density.hpp"
#include "wmix/index_set.hpp"
#include "wmix/sequence.hpp"

namespace wmix {

enum class Verdict { decaying, stalled, failed };

struct VerdictInfo {
  Verdict verdict = Verdict::failed;
  double tolerance = 0.0;
  double head_max = 0.0;  // max over the first quarter of the series
  double tail_max = 0.0;  // max over the last quarter
};

const char* verdict_name(Verdict v);

/// "decaying": tail max below tolerance and below half the head max.
/// "failed": the tail never halved the head.  Anything between: "stalled".
VerdictInfo decay_verdict(const std::vector<std::pair<std::int64_t, double>>& series,
                          double tolerance);

struct MixingReport {
  std::vector<std::pair<std::int64_t, double>> per_n;  // exact value or lower bound
  std::vector<std::pair<std::int64_t, double>> upper_per_n;  // filled in bounded mode
  bool exact = true;
  VerdictInfo verdict;
};

/// Tuning for the dual-ball maximizations; `exact_cutoff` is the largest
/// window enumerated exhaustively, `dense_limit` the largest materialized
/// Gram section for the randomized search.
struct DualSearchOptions {
  std::int64_t exact_cutoff = 20;
  std::int64_t dense_limit = 2048;
  int restarts = 4096;
  std::uint64_t seed = 0;
};

/// (1/n) sum_{k<=n} |<f, x_k>|, exact.
double cesaro_abs_average(const VectorSequence& seq, const Functional& f, std::int64_t n);

MixingReport cesaro_abs_series(const VectorSequence& seq, const Functional& f,
                               const std::vector<std::int64_t>& sample_ns, double tolerance);

struct UniformValue {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  Functional witness;  // attains `lower` (combination or dirac)
};

/// sup over the dual unit ball of (1/n) sum_{k<=n} |<y, x_k>|.  Inner-product
/// models use the real-scalar identity sup = max_eps ||sum eps_k x_k|| / n;
/// the continuous model evaluates ||(1/n) sum f_k||_inf at breakpoints.
UniformValue uniform_mixing_value(const VectorSequence& seq, std::int64_t n,
                                  const DualSearchOptions& opts = {});
/// Same sup restricted to indices in [a, b].
UniformValue windowed_uniform_mixing(const VectorSequence& seq, std::int64_t a, std::int64_t b,
                                     const DualSearchOptions& opts = {});
/// sup over the ball of (1/(b-a+1)) sum_{k=a}^{b} <y, x_k>^+ (subset search).
UniformValue windowed_positive_part(const VectorSequence& seq, std::int64_t a, std::int64_t b,
                                    const DualSearchOptions& opts = {});

MixingReport uniform_mixing_series(const VectorSequence& seq,
                                   const std::vector<std::int64_t>& sample_ns,
                                   double tolerance, const DualSearchOptions& opts = {});

/// || (1/n) sum of first n elements of K ||.
double subsequence_mean_norm(const VectorSequence& seq, const FiniteIndexSet& k, std::int64_t n);

struct Lemma21Check {
  double difference_norm = 0.0;  // must vanish: the two averages are equal
  double ratio = 0.0;            // j(n)/n
  std::int64_t j_n = 0;
};

/// Exact bookkeeping identity behind subsequence averaging:
/// (1/n) sum_{k in K, k<=n} x_k = (j(n)/n) * (1/j(n)) sum_{j<=j(n)} x_{k_j}.
Lemma21Check lemma_2_1_identity(const VectorSequence& seq, const FiniteIndexSet& k,
                                std::int64_t n);

/// One anchored step of the failure-witness data.
struct FailureWitness {
  double epsilon_o = 0.0;
  FiniteIndexSet b;  // union over anchors >= 2 of the truncated level sets
  std::vector<std::int64_t> anchors;                      // anchor window ends
  std::vector<std::pair<std::int64_t, std::int64_t>> anchor_windows;
  std::vector<Functional> functionals;                    // one per anchor
  std::vector<FiniteIndexSet> raw_sets;                   // level sets before truncation
};

struct WitnessGridEntry {
  double epsilon = 0.0;
  int crossings = 0;  // windows whose abs sup exceeds 16 eps
  int anchors = 0;
  bool complete = false;
};

struct WitnessSearchReport {
  std::optional<FailureWitness> witness;
  std::vector<WitnessGridEntry> grid;
  std::vector<std::pair<std::int64_t, double>> abs_values;  // (window end, abs sup estimate)
};

/// Failure-witness extraction along prefix lengths (anchored at k_j) or
/// arbitrary windows (anchored at b_j).  The sequence must satisfy
/// bound <= 1; rescale first.  Grid thresholds follow the literal cascade:
/// a window crosses at 16 eps on the absolute sup, anchors additionally
/// certify the positive-part sup above 4 eps, and level sets collect
/// pairings above 2 eps.
WitnessSearchReport extract_failure_witness(const VectorSequence& seq,
                                            const std::vector<std::int64_t>& sample_ns,
                                            const std::vector<double>& epsilon_grid,
                                            const DualSearchOptions& opts = {});
WitnessSearchReport extract_failure_witness_windows(
    const VectorSequence& seq,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& windows,
    const std::vector<double>& epsilon_grid, const DualSearchOptions& opts = {});

struct WitnessVerification {
  bool ok = false;
  bool interval_avoidance = false;
  bool pairings_exceed = false;
  bool cards_large = false;
  bool gaps_grow = false;
  bool dual_norms = false;
};

WitnessVerification verify_failure_witness(const VectorSequence& seq,
                                           const FailureWitness& w);

struct Theorem23Chain {
  double subsequence_mean = 0.0;  // || (1/j(n)) sum_{j<=j(n)} x_{k_j} ||
  double chain_bound = 0.0;       // R * (1 + 1/j(n)) * uniform upper at n
  double uniform_upper = 0.0;
  double growth_ratio = 0.0;
  std::int64_t j_n = 0;
};

/// The (j) => (jj) chain at finite horizon, made quantitative through the
/// averaging identity: subsequence mean at j(n) <= R (1 + 1/j(n)) U(n).
Theorem23Chain theorem23_chain(const VectorSequence& seq, const FiniteIndexSet& k,
                               std::int64_t n, const DualSearchOptions& opts = {});

}  // namespace wmix
