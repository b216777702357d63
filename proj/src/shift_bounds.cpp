#include "wmix/shift_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wmix/kernels/quad_max.hpp"

namespace wmix {

namespace {

struct SampleTask {
  std::int64_t p;
  std::vector<double> weights;  // dense over 1..p
};

std::vector<SampleTask> draw_samples(ShiftScheme scheme, std::int64_t p_max,
                                     std::int64_t count, std::uint64_t seed) {
  std::vector<SampleTask> tasks(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < count; ++s) {
    std::mt19937_64 rng(kernels::splitmix64(seed ^ (0x5EED0000ULL + std::uint64_t(s))));
    std::uniform_int_distribution<std::int64_t> pick_p(1, p_max);
    const std::int64_t p = pick_p(rng);
    std::vector<double> w(static_cast<std::size_t>(p), 0.0);
    if (scheme == ShiftScheme::convex) {
      // Dirichlet(1,...,1): exponential spacings, normalized.
      std::exponential_distribution<double> expo(1.0);
      double total = 0.0;
      for (auto& x : w) {
        x = expo(rng);
        total += x;
      }
      for (auto& x : w) x /= total;
    } else {
      // Random subset stratified by size.
      std::uniform_int_distribution<std::int64_t> pick_size(1, p);
      const std::int64_t size = pick_size(rng);
      std::vector<std::int64_t> pos(static_cast<std::size_t>(p));
      for (std::int64_t i = 0; i < p; ++i) pos[i] = i;
      std::shuffle(pos.begin(), pos.end(), rng);
      for (std::int64_t i = 0; i < size; ++i) w[pos[i]] = 1.0;
    }
    tasks[s] = {p, std::move(w)};
  }
  return tasks;
}

}  // namespace

ShiftBoundReport shift_bound_scan(const VectorSequence& seq, ShiftScheme scheme,
                                  std::int64_t p_max, std::int64_t shift_max,
                                  std::int64_t weight_samples, std::uint64_t seed) {
  if (p_max < 1 || shift_max < 1)
    throw std::invalid_argument("shift_bound_scan: p_max and shift_max must be >= 1");
  if (p_max + shift_max > seq.horizon())
    throw std::invalid_argument("shift_bound_scan: p_max + shift_max exceeds the horizon");

  const auto tasks = draw_samples(scheme, p_max, weight_samples, seed);

  struct Best {
    double ratio = -1.0;
    std::int64_t task = -1;
    std::int64_t shift = 0;
    double num = 0.0, den = 0.0;
  };
  Best best;
  std::int64_t near_singular = 0;

#pragma omp parallel
  {
    Best local;
    std::int64_t local_singular = 0;
    std::vector<std::int64_t> idx;
    std::vector<double> w;
#pragma omp for schedule(dynamic) nowait
    for (std::int64_t s = 0; s < std::int64_t(tasks.size()); ++s) {
      const auto& task = tasks[s];
      idx.clear();
      w.clear();
      for (std::int64_t j = 0; j < task.p; ++j) {
        if (task.weights[j] == 0.0) continue;
        idx.push_back(j + 1);
        w.push_back(task.weights[j]);
      }
      if (idx.empty()) continue;
      const double den = seq.combo_norm(w, idx);
      if (den < 1e-12) {
        ++local_singular;
        continue;
      }
      std::vector<std::int64_t> shifted(idx.size());
      for (std::int64_t k = 1; k <= shift_max; ++k) {
        for (std::size_t i = 0; i < idx.size(); ++i) shifted[i] = idx[i] + k;
        const double num = seq.combo_norm(w, shifted);
        const double ratio = num / den;
        if (ratio > local.ratio ||
            (ratio == local.ratio && (s < local.task || (s == local.task && k < local.shift))))
          local = {ratio, s, k, num, den};
      }
    }
#pragma omp critical
    {
      near_singular += local_singular;
      if (local.ratio > best.ratio ||
          (local.ratio == best.ratio &&
           (local.task < best.task || (local.task == best.task && local.shift < best.shift))))
        best = local;
    }
  }

  ShiftBoundReport rep;
  rep.scheme = scheme;
  rep.seed = seed;
  rep.samples_evaluated = weight_samples;
  rep.near_singular = near_singular;
  if (best.task >= 0) {
    rep.constant_estimate = best.ratio;
    rep.worst_case.p = tasks[best.task].p;
    rep.worst_case.weights = tasks[best.task].weights;
    rep.worst_case.shift = best.shift;
    rep.worst_case.numerator = best.num;
    rep.worst_case.denominator = best.den;
    rep.worst_case.ratio = best.ratio;
  }
  return rep;
}

ShiftSample replay_shift_sample(const VectorSequence& seq, const ShiftSample& sample) {
  std::vector<std::int64_t> idx, shifted;
  std::vector<double> w;
  for (std::int64_t j = 0; j < sample.p; ++j) {
    if (sample.weights[j] == 0.0) continue;
    idx.push_back(j + 1);
    shifted.push_back(j + 1 + sample.shift);
    w.push_back(sample.weights[j]);
  }
  ShiftSample out = sample;
  out.denominator = seq.combo_norm(w, idx);
  out.numerator = seq.combo_norm(w, shifted);
  out.ratio = out.denominator < 1e-12 ? 0.0 : out.numerator / out.denominator;
  return out;
}

ConvexUnboundednessWitness convex_unboundedness_witness(const VectorSequence& seq_6_2,
                                                        std::int64_t k_even) {
  if (k_even < 0 || k_even % 2 != 0)
    throw std::invalid_argument("convex_unboundedness_witness: k must be even and >= 0");
  if (3 * k_even + 5 > seq_6_2.horizon())
    throw std::invalid_argument("convex_unboundedness_witness: horizon too small");
  // p = 3k+2, lambda_{3k+1} = 1, lambda_{3k+2} = 2, shift 3.
  const std::int64_t n1 = 3 * k_even + 1, n2 = 3 * k_even + 2;
  const std::vector<double> w = {1.0, 2.0};
  ConvexUnboundednessWitness out;
  out.k = k_even;
  out.denominator = seq_6_2.combo_norm(w, std::vector<std::int64_t>{n1, n2});
  out.numerator = seq_6_2.combo_norm(w, std::vector<std::int64_t>{n1 + 3, n2 + 3});
  out.ratio = out.numerator / out.denominator;
  return out;
}

std::vector<NonOrbitCertificate> non_orbit_certificate(const VectorSequence& seq_3_3,
                                                       const std::vector<std::int64_t>& ks) {
  const auto& schedule = monomial_schedule_of(seq_3_3);
  const MonomialExact exact{schedule};
  std::vector<NonOrbitCertificate> out;
  for (std::int64_t k : ks) {
    if (k % 4 != 1)
      throw std::invalid_argument("non_orbit_certificate: k must be 1 mod 4");
    if (k + 3 > seq_3_3.horizon())
      throw std::invalid_argument("non_orbit_certificate: k + 3 exceeds the horizon");
    NonOrbitCertificate c;
    c.k = k;
    const BigRational lhs_sq = exact.diff_norm_sq(k + 2, k + 3);
    const BigRational rhs_sq = exact.diff_norm_sq(k, k + 1);
    c.holds_exactly = lhs_sq >= BigRational(k * k) * rhs_sq;
    c.paper_bound_holds =
        rhs_sq <= BigRational(1) / BigRational(32 * k * k * (k + 2) * (k + 2) * (2 * k + 1));
    c.lhs = std::sqrt(to_double(lhs_sq));
    c.rhs = double(k) * std::sqrt(to_double(rhs_sq));
    c.implied_operator_norm = std::sqrt(double(k));
    out.push_back(c);
  }
  return out;
}

}  // namespace wmix
