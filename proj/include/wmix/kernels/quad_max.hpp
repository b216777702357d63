#pragma once

#include <cstdint>
#include <vector>

namespace wmix::kernels {

/// Dense symmetric PSD matrix section, row-major.
struct GramSection {
  std::vector<double> m;
  std::int64_t n = 0;
  double at(std::int64_t i, std::int64_t j) const { return m[i * n + j]; }
  double& at(std::int64_t i, std::int64_t j) { return m[i * n + j]; }
};

/// Result of maximizing eps^T G eps over eps in {-1,+1}^n (signs) or
/// {0,1}^n (subset).  `config` holds the maximizing vector; values -1/0/1.
struct QuadMaxResult {
  double value = 0.0;
  std::vector<std::int8_t> config;
  bool exact = false;
};

/// Exact enumeration, Gray-code updates.  Sign search fixes eps_1 = +1
/// (the objective is even), subset search includes the empty set.
QuadMaxResult quad_max_signs_serial(const GramSection& g);
QuadMaxResult quad_max_signs_parallel(const GramSection& g);
QuadMaxResult quad_max_subset_serial(const GramSection& g);
QuadMaxResult quad_max_subset_parallel(const GramSection& g);

/// Randomized restarts with greedy single-flip ascent; deterministic for a
/// fixed seed regardless of thread count (per-restart RNG, ordered tie break).
QuadMaxResult quad_max_signs_random(const GramSection& g, int restarts,
                                    std::uint64_t seed);
QuadMaxResult quad_max_subset_random(const GramSection& g, int restarts,
                                     std::uint64_t seed);

/// Safe upper bound for the largest eigenvalue of a symmetric PSD section:
/// min(max absolute row sum, Frobenius norm, trace).
double psd_lambda_max_upper(const GramSection& g);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wmix::kernels
