#include "wmix/kernels/quad_max.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wmix::kernels {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// Enumerates all completions of `cfg` over positions [0, free_bits) by Gray
// code, keeping h_j = sum_k cfg_k G(j,k) and q = cfg^T G cfg incrementally.
// domain: signs toggle -1 <-> +1 (delta 2), subsets toggle 0 <-> 1 (delta 1).
template <bool Signs>
void gray_enumerate(const GramSection& g, std::vector<std::int8_t>& cfg,
                    std::vector<double>& h, double& q, int free_bits,
                    QuadMaxResult& best) {
  const std::int64_t n = g.n;
  auto consider = [&](double val) {
    if (best.config.empty() || val > best.value) {
      best.value = val;
      best.config = cfg;
    }
  };
  consider(q);
  const std::uint64_t total = free_bits >= 63 ? 0 : (std::uint64_t(1) << free_bits);
  for (std::uint64_t i = 1; i < total; ++i) {
    const int k = std::countr_zero(i);
    if constexpr (Signs) {
      const double ek = cfg[k];
      q += -4.0 * ek * h[k] + 4.0 * g.at(k, k);
      for (std::int64_t j = 0; j < n; ++j) h[j] -= 2.0 * ek * g.at(j, k);
      cfg[k] = static_cast<std::int8_t>(-cfg[k]);
    } else {
      const double sigma = cfg[k] ? -1.0 : 1.0;
      q += 2.0 * sigma * h[k] + g.at(k, k);
      for (std::int64_t j = 0; j < n; ++j) h[j] += sigma * g.at(j, k);
      cfg[k] = static_cast<std::int8_t>(1 - cfg[k]);
    }
    consider(q);
  }
}

template <bool Signs>
void init_state(const GramSection& g, const std::vector<std::int8_t>& cfg,
                std::vector<double>& h, double& q) {
  const std::int64_t n = g.n;
  h.assign(n, 0.0);
  for (std::int64_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::int64_t k = 0; k < n; ++k) s += double(cfg[k]) * g.at(j, k);
    h[j] = s;
  }
  q = 0.0;
  for (std::int64_t j = 0; j < n; ++j) q += double(cfg[j]) * h[j];
}

template <bool Signs>
QuadMaxResult exact_enumerate(const GramSection& g, bool parallel) {
  const std::int64_t n = g.n;
  if (n < 1) throw std::invalid_argument("quad_max: empty section");
  if (n > 30) throw std::invalid_argument("quad_max: exact enumeration capped at n = 30");
  // Sign search fixes the last position at +1; the subset search enumerates
  // everything.  Gray bits cover positions [0, free_bits).
  const int free_bits = Signs ? int(n - 1) : int(n);

  auto run_block = [&](std::int64_t hi_mask, int hi_bits) {
    std::vector<std::int8_t> cfg(n, Signs ? std::int8_t(1) : std::int8_t(0));
    // hi bits (the top hi_bits of the free range) are fixed by hi_mask
    for (int b = 0; b < hi_bits; ++b) {
      const int pos = free_bits - hi_bits + b;
      const bool on = (hi_mask >> b) & 1;
      if constexpr (Signs) cfg[pos] = on ? std::int8_t(-1) : std::int8_t(1);
      else cfg[pos] = on ? std::int8_t(1) : std::int8_t(0);
    }
    std::vector<double> h;
    double q = 0.0;
    init_state<Signs>(g, cfg, h, q);
    QuadMaxResult local;
    local.value = q;
    local.config = cfg;
    gray_enumerate<Signs>(g, cfg, h, q, free_bits - hi_bits, local);
    return local;
  };

  QuadMaxResult best;
  if (!parallel || free_bits < 8) {
    best = run_block(0, 0);
  } else {
    const int hi_bits = std::min(6, free_bits - 4);
    const std::int64_t blocks = std::int64_t(1) << hi_bits;
    std::vector<QuadMaxResult> per(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t m = 0; m < blocks; ++m) per[m] = run_block(m, hi_bits);
    best = per[0];
    for (std::int64_t m = 1; m < blocks; ++m)
      if (per[m].value > best.value) best = per[m];
  }
  best.exact = true;
  return best;
}

template <bool Signs>
QuadMaxResult greedy_ascent(const GramSection& g, std::vector<std::int8_t> cfg) {
  const std::int64_t n = g.n;
  std::vector<double> h;
  double q = 0.0;
  init_state<Signs>(g, cfg, h, q);
  for (;;) {
    double best_delta = 1e-13;
    std::int64_t best_k = -1;
    for (std::int64_t k = 0; k < n; ++k) {
      double delta;
      if constexpr (Signs) delta = -4.0 * double(cfg[k]) * h[k] + 4.0 * g.at(k, k);
      else delta = 2.0 * (cfg[k] ? -1.0 : 1.0) * h[k] + g.at(k, k);
      if (delta > best_delta) {
        best_delta = delta;
        best_k = k;
      }
    }
    if (best_k < 0) break;
    if constexpr (Signs) {
      const double ek = cfg[best_k];
      q += -4.0 * ek * h[best_k] + 4.0 * g.at(best_k, best_k);
      for (std::int64_t j = 0; j < n; ++j) h[j] -= 2.0 * ek * g.at(j, best_k);
      cfg[best_k] = static_cast<std::int8_t>(-cfg[best_k]);
    } else {
      const double sigma = cfg[best_k] ? -1.0 : 1.0;
      q += 2.0 * sigma * h[best_k] + g.at(best_k, best_k);
      for (std::int64_t j = 0; j < n; ++j) h[j] += sigma * g.at(j, best_k);
      cfg[best_k] = static_cast<std::int8_t>(1 - cfg[best_k]);
    }
  }
  QuadMaxResult r;
  r.value = q;
  r.config = std::move(cfg);
  return r;
}

template <bool Signs>
QuadMaxResult random_search(const GramSection& g, int restarts, std::uint64_t seed) {
  const std::int64_t n = g.n;
  if (n < 1) throw std::invalid_argument("quad_max: empty section");
  std::vector<QuadMaxResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed ^ (0xABCD0000ULL + std::uint64_t(r))));
    std::vector<std::int8_t> cfg(n);
    for (std::int64_t k = 0; k < n; ++k) {
      const bool on = rng() & 1;
      if constexpr (Signs) cfg[k] = on ? std::int8_t(1) : std::int8_t(-1);
      else cfg[k] = on ? std::int8_t(1) : std::int8_t(0);
    }
    results[r] = greedy_ascent<Signs>(g, std::move(cfg));
  }
  // Ordered merge: result independent of thread scheduling.
  QuadMaxResult best = results[0];
  for (int r = 1; r < restarts; ++r)
    if (results[r].value > best.value) best = results[r];
  best.exact = false;
  return best;
}

}  // namespace

QuadMaxResult quad_max_signs_serial(const GramSection& g) { return exact_enumerate<true>(g, false); }
QuadMaxResult quad_max_signs_parallel(const GramSection& g) { return exact_enumerate<true>(g, true); }
QuadMaxResult quad_max_subset_serial(const GramSection& g) { return exact_enumerate<false>(g, false); }
QuadMaxResult quad_max_subset_parallel(const GramSection& g) { return exact_enumerate<false>(g, true); }

QuadMaxResult quad_max_signs_random(const GramSection& g, int restarts, std::uint64_t seed) {
  return random_search<true>(g, restarts, seed);
}
QuadMaxResult quad_max_subset_random(const GramSection& g, int restarts, std::uint64_t seed) {
  return random_search<false>(g, restarts, seed);
}

double psd_lambda_max_upper(const GramSection& g) {
  const std::int64_t n = g.n;
  double row = 0.0, frob = 0.0, trace = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      s += std::abs(g.at(i, j));
      frob += g.at(i, j) * g.at(i, j);
    }
    row = std::max(row, s);
    trace += g.at(i, i);
  }
  return std::min(row, std::min(std::sqrt(frob), trace));
}

}  // namespace wmix::kernels
