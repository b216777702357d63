#include "wmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wmix/kernels/quad_max.hpp"

namespace wmix {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::decaying: return "decaying";
    case Verdict::stalled: return "stalled";
    case Verdict::failed: return "failed";
  }
  return "?";
}

VerdictInfo decay_verdict(const std::vector<std::pair<std::int64_t, double>>& series,
                          double tolerance) {
  VerdictInfo info;
  info.tolerance = tolerance;
  if (series.empty()) return info;
  const std::size_t n = series.size();
  const std::size_t quarter = (n + 3) / 4;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < quarter) info.head_max = std::max(info.head_max, series[i].second);
    if (i >= n - quarter) info.tail_max = std::max(info.tail_max, series[i].second);
  }
  if (info.tail_max <= tolerance && info.tail_max <= 0.5 * info.head_max)
    info.verdict = Verdict::decaying;
  else if (info.tail_max > 0.5 * info.head_max)
    info.verdict = Verdict::failed;
  else
    info.verdict = Verdict::stalled;
  return info;
}

double cesaro_abs_average(const VectorSequence& seq, const Functional& f, std::int64_t n) {
  if (n < 1 || n > seq.horizon())
    throw std::out_of_range("cesaro_abs_average: n outside [1, horizon]");
  double s = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) s += std::abs(seq.pairing(f, k));
  return s / double(n);
}

MixingReport cesaro_abs_series(const VectorSequence& seq, const Functional& f,
                               const std::vector<std::int64_t>& sample_ns, double tolerance) {
  MixingReport rep;
  rep.exact = true;
  for (std::int64_t n : sample_ns) rep.per_n.emplace_back(n, cesaro_abs_average(seq, f, n));
  rep.verdict = decay_verdict(rep.per_n, tolerance);
  return rep;
}

namespace {

// Continuous model: the dual ball is the measures of total variation <= 1;
// for nonnegative f_k both the absolute and positive-part sups are attained
// by a point evaluation at the maximizing breakpoint.
UniformValue continuous_window_value(const VectorSequence& seq, std::int64_t a,
                                     std::int64_t b) {
  if (!seq.model().nonnegative())
    throw std::logic_error("uniform mixing on the continuous model needs nonnegative f_k");
  const auto& bps = seq.model().breakpoints();
  double best = -1.0, best_t = 0.0;
  for (double t : bps) {
    double s = 0.0;
    for (std::int64_t k = a; k <= b; ++k) s += seq.model().eval(k, t);
    if (s > best) {
      best = s;
      best_t = t;
    }
  }
  UniformValue v;
  v.lower = v.upper = best / double(b - a + 1);
  v.exact = true;
  v.witness = Functional::dirac(best_t, 1.0);
  return v;
}

Functional make_combination_witness(const std::vector<std::int8_t>& config, std::int64_t a,
                                    double attained_norm) {
  std::vector<std::int64_t> idx;
  std::vector<double> coeffs;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (config[i] == 0) continue;
    idx.push_back(a + std::int64_t(i));
    coeffs.push_back(double(config[i]));
  }
  if (attained_norm > 1e-15)
    for (double& c : coeffs) c /= attained_norm;
  return Functional::combination(std::move(idx), std::move(coeffs));
}

// Streaming bounds for windows too large to materialize: Gershgorin /
// Frobenius / trace upper bound and a single greedy sign pass for the lower.
UniformValue streaming_window_value(const VectorSequence& seq, std::int64_t a, std::int64_t b,
                                    bool signs) {
  const std::int64_t len = b - a + 1;
  double row_max = 0.0, frob = 0.0, trace = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : row_max) reduction(+ : frob, trace)
  for (std::int64_t i = 0; i < len; ++i) {
    double row = 0.0;
    for (std::int64_t j = 0; j < len; ++j) {
      const double g = seq.gram(a + i, a + j);
      row += std::abs(g);
      frob += g * g;
    }
    row_max = std::max(row_max, row);
    trace += seq.gram(a + i, a + i);
  }
  const double lam = std::min(row_max, std::min(std::sqrt(frob), trace));

  // Greedy pass: keep the running combination's pairing with each candidate.
  std::vector<std::int8_t> cfg(static_cast<std::size_t>(len), 0);
  double q = 0.0;
  std::vector<double> h(static_cast<std::size_t>(len), 0.0);
  for (std::int64_t i = 0; i < len; ++i) {
    const double gain_plus = 2.0 * h[i] + seq.gram(a + i, a + i);
    const double gain_minus = -2.0 * h[i] + seq.gram(a + i, a + i);
    std::int8_t s;
    if (signs)
      s = gain_plus >= gain_minus ? std::int8_t(1) : std::int8_t(-1);
    else
      s = gain_plus > 1e-15 ? std::int8_t(1) : std::int8_t(0);
    if (s != 0) {
      q += (s > 0 ? gain_plus : gain_minus);
      cfg[i] = s;
#pragma omp parallel for schedule(static)
      for (std::int64_t j = 0; j < len; ++j) h[j] += double(s) * seq.gram(a + j, a + i);
    }
  }
  const double attained = std::sqrt(std::max(0.0, q));
  UniformValue v;
  v.lower = attained / double(len);
  v.upper = std::sqrt(std::max(0.0, double(len) * lam)) / double(len);
  v.upper = std::max(v.upper, v.lower);
  v.exact = false;
  v.witness = make_combination_witness(cfg, a, attained);
  return v;
}

UniformValue inner_window_value(const VectorSequence& seq, std::int64_t a, std::int64_t b,
                                const DualSearchOptions& opts, bool signs) {
  const std::int64_t len = b - a + 1;
  if (len <= opts.exact_cutoff) {
    const auto g = seq.gram_section(a, b);
    const auto r = signs ? kernels::quad_max_signs_parallel(g)
                         : kernels::quad_max_subset_parallel(g);
    const double attained = std::sqrt(std::max(0.0, r.value));
    UniformValue v;
    v.lower = v.upper = attained / double(len);
    v.exact = true;
    v.witness = make_combination_witness(r.config, a, attained);
    return v;
  }
  if (len <= opts.dense_limit) {
    const auto g = seq.gram_section(a, b);
    const auto r = signs ? kernels::quad_max_signs_random(g, opts.restarts, opts.seed)
                         : kernels::quad_max_subset_random(g, opts.restarts, opts.seed);
    const double attained = std::sqrt(std::max(0.0, r.value));
    UniformValue v;
    v.lower = attained / double(len);
    v.upper = std::sqrt(std::max(0.0, double(len) * kernels::psd_lambda_max_upper(g))) /
              double(len);
    v.upper = std::max(v.upper, v.lower);
    v.exact = false;
    v.witness = make_combination_witness(r.config, a, attained);
    return v;
  }
  return streaming_window_value(seq, a, b, signs);
}

void check_window(const VectorSequence& seq, std::int64_t a, std::int64_t b) {
  if (a < 1 || b < a || b > seq.horizon())
    throw std::out_of_range("window [" + std::to_string(a) + ", " + std::to_string(b) +
                            "] outside [1, " + std::to_string(seq.horizon()) + "]");
}

}  // namespace

UniformValue windowed_uniform_mixing(const VectorSequence& seq, std::int64_t a, std::int64_t b,
                                     const DualSearchOptions& opts) {
  check_window(seq, a, b);
  if (seq.kind() == ModelKind::continuous_function)
    return continuous_window_value(seq, a, b);
  return inner_window_value(seq, a, b, opts, /*signs=*/true);
}

UniformValue uniform_mixing_value(const VectorSequence& seq, std::int64_t n,
                                  const DualSearchOptions& opts) {
  return windowed_uniform_mixing(seq, 1, n, opts);
}

UniformValue windowed_positive_part(const VectorSequence& seq, std::int64_t a, std::int64_t b,
                                    const DualSearchOptions& opts) {
  check_window(seq, a, b);
  if (seq.kind() == ModelKind::continuous_function)
    return continuous_window_value(seq, a, b);
  return inner_window_value(seq, a, b, opts, /*signs=*/false);
}

MixingReport uniform_mixing_series(const VectorSequence& seq,
                                   const std::vector<std::int64_t>& sample_ns,
                                   double tolerance, const DualSearchOptions& opts) {
  MixingReport rep;
  rep.exact = true;
  for (std::int64_t n : sample_ns) {
    const auto v = uniform_mixing_value(seq, n, opts);
    rep.per_n.emplace_back(n, v.lower);
    rep.upper_per_n.emplace_back(n, v.upper);
    rep.exact = rep.exact && v.exact;
  }
  rep.verdict = decay_verdict(rep.exact ? rep.per_n : rep.upper_per_n, tolerance);
  return rep;
}

double subsequence_mean_norm(const VectorSequence& seq, const FiniteIndexSet& k,
                             std::int64_t n) {
  if (n < 1 || n > k.size())
    throw std::invalid_argument("subsequence_mean_norm: K has fewer than n elements");
  std::vector<std::int64_t> idx(k.elements().begin(), k.elements().begin() + n);
  std::vector<double> w(static_cast<std::size_t>(n), 1.0 / double(n));
  return seq.combo_norm(w, idx);
}

Lemma21Check lemma_2_1_identity(const VectorSequence& seq, const FiniteIndexSet& k,
                                std::int64_t n) {
  if (k.empty_set() || n < k.elements().front())
    throw std::invalid_argument("lemma_2_1_identity: n precedes the first element of K");
  // Path one: membership scan over [1, n].
  std::vector<std::int64_t> lhs_idx;
  for (std::int64_t i = 1; i <= n; ++i)
    if (k.contains(i)) lhs_idx.push_back(i);
  // Path two: prefix of the element list.
  const std::int64_t j_n = k.count_prefix(n);
  std::vector<std::int64_t> rhs_idx(k.elements().begin(), k.elements().begin() + j_n);

  std::vector<std::int64_t> idx = lhs_idx;
  std::vector<double> w(idx.size(), 1.0 / double(n));
  // (j(n)/n) * (1/j(n)) = 1/n exactly over the rationals; keeping the
  // coefficient in that form makes the residual measure only the index
  // bookkeeping, not floating-point round-off.
  for (std::size_t i = 0; i < rhs_idx.size(); ++i) {
    idx.push_back(rhs_idx[i]);
    w.push_back(-1.0 / double(n));
  }
  Lemma21Check out;
  out.difference_norm = seq.combo_norm(w, idx);
  out.j_n = j_n;
  out.ratio = double(j_n) / double(n);
  return out;
}

// ---------------------------------------------------------------------------
// Failure-witness extraction (anchored level sets)

WitnessSearchReport extract_failure_witness_windows(
    const VectorSequence& seq,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& windows,
    const std::vector<double>& epsilon_grid, const DualSearchOptions& opts) {
  if (seq.bound() > 1.0 + 1e-9)
    throw std::invalid_argument("extract_failure_witness: sequence bound exceeds 1; rescale");
  if (windows.empty()) throw std::invalid_argument("extract_failure_witness: no windows");
  for (const auto& [a, b] : windows) check_window(seq, a, b);
  auto sorted = windows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& x, const auto& y) { return x.second < y.second; });

  WitnessSearchReport rep;
  std::vector<double> abs_sup(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    abs_sup[i] = windowed_uniform_mixing(seq, sorted[i].first, sorted[i].second, opts).lower;
    rep.abs_values.emplace_back(sorted[i].second, abs_sup[i]);
  }

  std::vector<double> grid = epsilon_grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  for (double eps : grid) {
    if (!(eps > 0.0) || eps > 1.0)
      throw std::invalid_argument("extract_failure_witness: epsilon grid must lie in (0, 1]");
    WitnessGridEntry entry;
    entry.epsilon = eps;
    std::vector<std::size_t> crossing;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (abs_sup[i] > 16.0 * eps) crossing.push_back(i);
    entry.crossings = int(crossing.size());
    if (entry.crossings < 3) {
      rep.grid.push_back(entry);
      continue;
    }

    // Greedy anchor recursion: the next anchor is the first crossing window
    // whose length exceeds (previous end + ordinal) / eps.
    FailureWitness w;
    w.epsilon_o = eps;
    std::vector<std::int64_t> union_b;
    bool ok = true;
    std::int64_t prev_end = -1;
    for (std::size_t i = 0; i < crossing.size() && ok; ++i) {
      const auto [a, b] = sorted[crossing[i]];
      const std::int64_t len = b - a + 1;
      const std::int64_t ordinal = std::int64_t(w.anchors.size()) + 1;
      if (ordinal > 1 && double(len) * eps <= double(prev_end + ordinal)) continue;
      const auto pos = windowed_positive_part(seq, a, b, opts);
      if (!(pos.lower > 4.0 * eps)) continue;
      // Level set against the attaining functional.
      std::vector<std::int64_t> raw;
      for (std::int64_t k = a; k <= b; ++k)
        if (seq.pairing(pos.witness, k) > 2.0 * eps) raw.push_back(k);
      if (double(raw.size()) < 2.0 * double(len) * eps) continue;
      if (ordinal > 1) {
        std::vector<std::int64_t> trunc;
        for (std::int64_t k : raw)
          if (k > prev_end + ordinal) trunc.push_back(k);
        if (trunc.empty()) continue;
        union_b.insert(union_b.end(), trunc.begin(), trunc.end());
      }
      w.anchors.push_back(b);
      w.anchor_windows.emplace_back(a, b);
      w.functionals.push_back(pos.witness);
      w.raw_sets.push_back(FiniteIndexSet(std::move(raw), seq.horizon()));
      prev_end = b;
    }
    entry.anchors = int(w.anchors.size());
    entry.complete = entry.anchors >= 3;
    rep.grid.push_back(entry);
    if (entry.complete) {
      std::sort(union_b.begin(), union_b.end());
      union_b.erase(std::unique(union_b.begin(), union_b.end()), union_b.end());
      w.b = FiniteIndexSet(std::move(union_b), seq.horizon());
      rep.witness = std::move(w);
      return rep;
    }
  }
  return rep;
}

WitnessSearchReport extract_failure_witness(const VectorSequence& seq,
                                            const std::vector<std::int64_t>& sample_ns,
                                            const std::vector<double>& epsilon_grid,
                                            const DualSearchOptions& opts) {
  std::vector<std::pair<std::int64_t, std::int64_t>> windows;
  for (std::int64_t n : sample_ns) windows.emplace_back(1, n);
  return extract_failure_witness_windows(seq, windows, epsilon_grid, opts);
}

WitnessVerification verify_failure_witness(const VectorSequence& seq,
                                           const FailureWitness& w) {
  WitnessVerification v;
  if (w.anchors.size() < 3) return v;
  v.interval_avoidance = true;
  v.pairings_exceed = true;
  v.cards_large = true;
  v.gaps_grow = true;
  v.dual_norms = true;
  for (std::size_t n = 1; n < w.anchors.size(); ++n) {
    const std::int64_t prev = w.anchors[n - 1];
    const std::int64_t ord = std::int64_t(n) + 1;
    if (!(w.anchors[n] - prev > ord)) v.gaps_grow = false;
    for (std::int64_t k = prev + 1; k <= prev + ord; ++k)
      if (w.b.contains(k)) v.interval_avoidance = false;
    for (std::int64_t k = prev + ord + 1; k <= w.anchors[n]; ++k)
      if (w.b.contains(k) && !(seq.pairing(w.functionals[n], k) > 2.0 * w.epsilon_o))
        v.pairings_exceed = false;
  }
  for (std::size_t n = 0; n < w.anchors.size(); ++n) {
    const auto [a, b] = w.anchor_windows[n];
    if (double(w.raw_sets[n].size()) < 2.0 * double(b - a + 1) * w.epsilon_o)
      v.cards_large = false;
    if (seq.dual_norm(w.functionals[n]) > 1.0 + 1e-9) v.dual_norms = false;
  }
  v.ok = v.interval_avoidance && v.pairings_exceed && v.cards_large && v.gaps_grow &&
         v.dual_norms;
  return v;
}

Theorem23Chain theorem23_chain(const VectorSequence& seq, const FiniteIndexSet& k,
                               std::int64_t n, const DualSearchOptions& opts) {
  Theorem23Chain c;
  c.j_n = k.count_prefix(n);
  if (c.j_n < 1) throw std::invalid_argument("theorem23_chain: K has no elements <= n");
  if (n >= k.elements().back())
    throw std::invalid_argument(
        "theorem23_chain: n must precede K's last element (k_{j(n)+1} must exist)");
  c.growth_ratio = subsequence_growth_ratio(k);
  c.uniform_upper = uniform_mixing_value(seq, n, opts).upper;
  c.subsequence_mean = subsequence_mean_norm(seq, k, c.j_n);
  c.chain_bound = c.growth_ratio * (1.0 + 1.0 / double(c.j_n)) * c.uniform_upper;
  return c;
}

}  // namespace wmix
