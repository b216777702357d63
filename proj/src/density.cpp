#include "wmix/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmix/kernels/scan.hpp"
#include "wmix/kernels/window_scan.hpp"

namespace wmix {

namespace {

std::vector<std::int32_t> prefix_counts(const FiniteIndexSet& a, std::int64_t lo,
                                        std::int64_t hi) {
  std::vector<std::int32_t> prefix(static_cast<std::size_t>(hi - lo + 2), 0);
  for (std::int64_t i = lo; i <= hi; ++i)
    prefix[i - lo + 1] = prefix[i - lo] + (a.contains(i) ? 1 : 0);
  return prefix;
}

}  // namespace

DensityProfile density_profile(const FiniteIndexSet& a, std::int64_t tail_start) {
  const std::int64_t h = a.horizon();
  if (h < 1) throw std::invalid_argument("density_profile: empty horizon");
  if (tail_start < 1 || tail_start > h)
    throw std::invalid_argument("density_profile: tail_start must lie in [1, horizon]");

  DensityProfile p;
  p.tail_start = tail_start;
  double hi = 0.0, lo = 1.0;
  for (std::int64_t n = tail_start; n <= h; ++n) {
    const double r = double(a.count_prefix(n)) / double(n);
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  p.upper_estimate = hi;
  p.lower_estimate = lo;

  // Sampled ratios on a geometric grid (reporting only; estimates are exact).
  for (std::int64_t n = tail_start; n <= h;
       n = std::max(n + 1, std::int64_t(double(n) * 1.25))) {
    p.ratios.emplace_back(n, double(a.count_prefix(n)) / double(n));
  }
  if (p.ratios.empty() || p.ratios.back().first != h)
    p.ratios.emplace_back(h, double(a.count_prefix(h)) / double(h));

  const std::int64_t w =
      std::max<std::int64_t>(1, std::min<std::int64_t>(tail_start,
                                                       std::int64_t(std::sqrt(double(h)))));
  p.window_schedule = w;
  p.banach_estimate = banach_upper_density(a, w);
  return p;
}

BanachWindow banach_upper_density_window(const FiniteIndexSet& a, std::int64_t min_window) {
  const std::int64_t h = a.horizon();
  if (min_window < 1 || min_window > h)
    throw std::invalid_argument("banach_upper_density: min_window must lie in [1, horizon]");
  if (a.empty_set()) return {};
  const auto prefix = prefix_counts(a, 1, h);
  const auto best = kernels::max_density_window_parallel(prefix, 1, h, min_window);
  BanachWindow out;
  out.a = best.a;
  out.b = best.b;
  out.count = best.count;
  out.density = best.density();
  return out;
}

double banach_upper_density(const FiniteIndexSet& a, std::int64_t min_window) {
  return banach_upper_density_window(a, min_window).density;
}

std::optional<std::int64_t> relative_density_gap(const FiniteIndexSet& a) {
  if (a.empty_set()) return std::nullopt;
  const auto& e = a.elements();
  std::int64_t gap = e.front();  // interval [1, first] has length `first`
  for (std::size_t i = 1; i < e.size(); ++i) gap = std::max(gap, e[i] - e[i - 1]);
  gap = std::max(gap, a.horizon() - e.back());
  return gap;
}

FiniteIndexSet augment_with_multiples(const FiniteIndexSet& n, std::int64_t p) {
  if (p < 1) throw std::invalid_argument("augment_with_multiples: p must be >= 1");
  return n.unite(FiniteIndexSet::multiples(p, n.horizon()));
}

double subsequence_growth_ratio(const FiniteIndexSet& k) {
  if (k.empty_set()) throw std::invalid_argument("subsequence_growth_ratio: empty set");
  const auto& e = k.elements();
  double r = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j)
    r = std::max(r, double(e[j]) / double(j + 1));
  return r;
}

KvnReport kvn_extract(const std::vector<double>& a,
                      const std::vector<double>& threshold_schedule,
                      std::int64_t density_tail_start) {
  const std::int64_t h = static_cast<std::int64_t>(a.size());
  if (h < 1) throw std::invalid_argument("kvn_extract: empty sequence");
  if (threshold_schedule.empty())
    throw std::invalid_argument("kvn_extract: empty schedule");
  for (std::size_t m = 0; m < threshold_schedule.size(); ++m) {
    if (threshold_schedule[m] <= 0.0 ||
        (m > 0 && threshold_schedule[m] >= threshold_schedule[m - 1]))
      throw std::invalid_argument("kvn_extract: schedule must be strictly decreasing and > 0");
  }

  KvnReport rep;
  rep.exceptional = FiniteIndexSet::empty(h);

  // Cesàro means of |a_k| on a geometric grid; refusal when they do not decay.
  {
    double running = 0.0;
    std::int64_t next = 1;
    for (std::int64_t n = 1; n <= h; ++n) {
      running += std::abs(a[n - 1]);
      if (n == next || n == h) {
        rep.cesaro_means.emplace_back(n, running / double(n));
        next = std::max(n + 1, std::int64_t(double(n) * 1.5));
      }
    }
    const std::size_t cnt = rep.cesaro_means.size();
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < cnt; ++i) {
      const double v = rep.cesaro_means[i].second;
      if (i < (cnt + 3) / 4) head = std::max(head, v);
      if (i >= cnt - (cnt + 3) / 4) tail = std::max(tail, v);
    }
    if (tail > 0.0 && tail > 0.9 * head) {
      rep.refused = true;
      return rep;
    }
  }

  // Cut points: c_{m+1} is the first n > c_m where the tau_{m+1}-level set
  // has prefix density <= tau_{m+1}; stop (and say so) when that never happens.
  std::vector<std::int64_t> level_count(threshold_schedule.size(), 0);
  std::vector<std::int64_t> cuts;
  std::int64_t prev_cut = 0;
  for (std::size_t m = 0; m < threshold_schedule.size(); ++m) {
    const double tau = threshold_schedule[m];
    std::int64_t cnt = 0;
    std::int64_t found = -1;
    for (std::int64_t n = 1; n <= h; ++n) {
      if (std::abs(a[n - 1]) >= tau) ++cnt;
      if (n > prev_cut && double(cnt) <= tau * double(n)) {
        found = n;
        break;
      }
    }
    if (found < 0) {
      rep.schedule_truncated = true;
      break;
    }
    cuts.push_back(found);
    rep.thresholds.push_back(tau);
    prev_cut = found;
  }
  rep.cut_points = cuts;
  if (cuts.empty()) {
    rep.schedule_truncated = true;
    rep.refused = rep.refused || rep.cesaro_means.back().second > threshold_schedule.front();
    return rep;
  }

  // Segment (c_m, c_{m+1}] keeps threshold tau_m; the head (0, c_1] uses tau_1
  // and the last segment extends to the horizon.
  std::vector<std::int64_t> e;
  for (std::int64_t k = 1; k <= h; ++k) {
    std::size_t m = 0;  // index into cuts: threshold tau_{m+1} applies past cuts[m]
    while (m < cuts.size() && k > cuts[m]) ++m;
    const double tau = rep.thresholds[m == 0 ? 0 : m - 1];
    if (std::abs(a[k - 1]) >= tau) e.push_back(k);
  }
  rep.exceptional = FiniteIndexSet(std::move(e), h);

  for (std::size_t m = 0; m < cuts.size(); ++m) {
    double worst = 0.0;
    for (std::int64_t k = cuts[m] + 1; k <= h; ++k)
      if (!rep.exceptional.contains(k)) worst = std::max(worst, std::abs(a[k - 1]));
    rep.off_e_max.push_back(worst);
  }

  const std::int64_t tail =
      density_tail_start > 0 ? density_tail_start
                             : std::max<std::int64_t>(1, std::min<std::int64_t>(h, h / 10));
  rep.e_profile = density_profile(rep.exceptional, tail);
  return rep;
}

std::vector<std::int64_t> translate_check(const FiniteIndexSet& f, const FiniteIndexSet& b) {
  const std::int64_t h = b.horizon();
  const std::int64_t max_f = f.empty_set() ? 0 : f.elements().back();
  if (max_f > h) throw std::invalid_argument("translate_check: max(F) exceeds B's horizon");
  std::vector<std::uint8_t> member(static_cast<std::size_t>(h + 1), 0);
  for (std::int64_t v : b.elements()) member[v] = 1;
  if (b.contains(0)) member[0] = 1;
  return kernels::translate_scan_parallel(member, f.elements(), h - max_f);
}

}  // namespace wmix
