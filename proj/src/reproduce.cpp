#include "wmix/reproduce.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wmix/ergodic.hpp"
#include "wmix/kernels/quad_max.hpp"
#include "wmix/mixing.hpp"
#include "wmix/quadrature.hpp"
#include "wmix/sequence.hpp"
#include "wmix/shift_bounds.hpp"

namespace wmix {

namespace {

void push(ReproduceResult& r, const std::string& name, bool pass, Json details = {}) {
  r.assertions.push_back({name, pass, std::move(details)});
}

std::vector<std::int64_t> block_ends_within(const BlockSchedule& s, std::int64_t horizon,
                                            int max_blocks) {
  std::vector<std::int64_t> ends;
  for (std::size_t j = 0; j + 1 < s.block_starts.size() && int(ends.size()) < max_blocks; ++j) {
    const std::int64_t end = s.block_starts[j + 1] - 1;
    if (end > horizon) break;
    ends.push_back(end);
  }
  return ends;
}

ReproduceResult reproduce_3_1(std::int64_t horizon, std::uint64_t seed) {
  ReproduceResult r;
  r.example = "example_3_1";
  if (horizon < 513) horizon = 1024;  // needs blocks through n_11
  const BlockSchedule sched = BlockSchedule::standard(horizon);
  const auto seq = make_example_3_1(sched, horizon);

  // Block means keep sup norm >= 1/2 at every block end.
  const auto ends = block_ends_within(sched, horizon, 10);
  bool halves = ends.size() == 10;
  Json mean_values = Json::array();
  for (std::int64_t end : ends) {
    const double v = windowed_uniform_mixing(seq, 1, end).lower;
    mean_values.push_back(jnum(v));
    halves = halves && v >= 0.5;
  }
  push(r, "block_mean_sup_at_least_half", halves, {{"per_block_end", mean_values}});

  // Point evaluations above t_5 die out; their Cesàro averages sink below 0.05.
  std::mt19937_64 rng(kernels::splitmix64(seed ^ 0x31313131ULL));
  std::uniform_real_distribution<double> pick_t(sched.knots[4] + 1e-9, 1.0);
  bool decay = true;
  Json dirac_values = Json::array();
  CsvSeries csv{"example_3_1_dirac_cesaro", {"t", "cesaro_at_horizon"}, {}};
  for (int i = 0; i < 20; ++i) {
    const double t = pick_t(rng);
    const double v = cesaro_abs_average(seq, Functional::dirac(t), horizon);
    dirac_values.push_back(jnum(v));
    csv.rows.push_back({format_sig17(t), format_sig17(v)});
    decay = decay && v < 0.05;
  }
  r.series.push_back(std::move(csv));
  push(r, "dirac_cesaro_below_0.05", decay, {{"values", dirac_values}});

  bool zero_at_origin = true, unit_sup = true;
  for (std::int64_t k = 1; k <= horizon; ++k) {
    zero_at_origin = zero_at_origin && seq.model().eval(k, 0.0) == 0.0;
    unit_sup = unit_sup && std::abs(seq.norm(k) - 1.0) < 1e-12;
  }
  push(r, "f_k_vanishes_at_zero", zero_at_origin);
  push(r, "f_k_sup_norm_one", unit_sup);
  return r;
}

ReproduceResult reproduce_3_2(std::int64_t horizon, std::uint64_t seed) {
  ReproduceResult r;
  r.example = "example_3_2";
  if (horizon < 513) horizon = 1024;
  const BlockSchedule sched = BlockSchedule::standard(horizon);
  const auto seq = make_example_3_2(sched, horizon);
  const std::int64_t blocks = sched.blocks_within(horizon);

  const auto ends = block_ends_within(sched, horizon, 10);
  bool quarter = ends.size() == 10;
  Json mean_sq = Json::array();
  const auto all = FiniteIndexSet::full_range(horizon);
  for (std::int64_t end : ends) {
    const double v = subsequence_mean_norm(seq, all, end);
    mean_sq.push_back(jnum(v * v));
    quarter = quarter && v * v >= 0.25;
  }
  push(r, "block_mean_norm_sq_at_least_quarter", quarter, {{"per_block_end", mean_sq}});

  // Fixed unit functionals with square-summable block profiles: pairings
  // against the block vectors sink below 0.02 from block 10 on.
  std::mt19937_64 rng(kernels::splitmix64(seed ^ 0x32323232ULL));
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  bool bessel = blocks >= 10;
  Json tails = Json::array();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> idx;
    std::vector<double> coeffs;
    double norm_sq = 0.0;
    for (std::int64_t j = 1; j <= blocks; ++j) {
      const double c = (rng() & 1 ? 1.0 : -1.0) * mag(rng) * std::pow(2.0, -double(j));
      idx.push_back(sched.block_starts[j - 1]);
      coeffs.push_back(c);
      norm_sq += c * c;
    }
    for (double& c : coeffs) c /= std::sqrt(norm_sq);
    const auto f = Functional::combination(idx, coeffs);
    bessel = bessel && std::abs(seq.dual_norm(f) - 1.0) < 1e-9;
    double tail = 0.0;
    for (std::int64_t j = 10; j <= blocks; ++j)
      tail = std::max(tail, std::abs(seq.pairing(f, sched.block_starts[j - 1])));
    tails.push_back(jnum(tail));
    bessel = bessel && tail < 0.02;
  }
  push(r, "bessel_pairings_below_0.02_from_block_10", bessel, {{"tail_max", tails}});

  push(r, "gram_unit_diagonal", seq.gram(1, 1) == 1.0);
  push(r, "gram_cross_block_zero", seq.gram(sched.block_starts[1], 1) == 0.0);
  return r;
}

ReproduceResult reproduce_3_3(std::int64_t horizon, std::uint64_t seed) {
  ReproduceResult r;
  r.example = "example_3_3";
  if (horizon < 128) horizon = 128;
  const auto seq = make_example_3_3(horizon);
  const auto& sched = monomial_schedule_of(seq);

  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; k + 3 <= std::min<std::int64_t>(horizon, 104); k += 4)
    ks.push_back(k);
  const auto certs = non_orbit_certificate(seq, ks);
  bool growth = ks.back() == 101;
  bool chain = true;
  for (const auto& c : certs) {
    growth = growth && c.holds_exactly;
    chain = chain && c.paper_bound_holds;
  }
  push(r, "growth_inequality_exact_k_to_101", growth, {{"count", Json(ks.size())}});
  push(r, "difference_norm_upper_chain", chain);

  // Quadrature cross-check of the closed-form inner products.
  std::mt19937_64 rng(kernels::splitmix64(seed ^ 0x33333333ULL));
  std::uniform_int_distribution<std::int64_t> pick(1, horizon);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::int64_t j = pick(rng), k = pick(rng);
    const double aj = to_double(sched.exponents[j - 1]);
    const double ak = to_double(sched.exponents[k - 1]);
    const double quad = integrate_01([&](double x) { return std::pow(x, aj + ak); });
    worst = std::max(worst, std::abs(quad - seq.gram(j, k)));
  }
  push(r, "quadrature_matches_gram_1e-9", worst <= 1e-9, {{"worst", jnum(worst)}});

  const auto scan = shift_bound_scan(seq, ShiftScheme::convex, 8, horizon - 9, 10000, seed);
  push(r, "convex_shift_constant_at_most_one", scan.constant_estimate <= 1.0 + 1e-9,
       {{"constant", jnum(scan.constant_estimate)},
        {"near_singular", Json(scan.near_singular)}});
  return r;
}

ReproduceResult reproduce_6_2(std::int64_t horizon, std::uint64_t seed) {
  ReproduceResult r;
  r.example = "example_6_2";
  if (horizon < 128) horizon = 128;
  const auto seq = make_example_6_2(horizon);

  const auto scan = shift_bound_scan(seq, ShiftScheme::zero_one, 30, horizon - 31, 10000, seed);
  const double cap = std::sqrt(45.0 / 2.0);
  push(r, "cesaro_shift_constant_at_most_sqrt_45_over_2",
       scan.constant_estimate <= cap + 1e-9,
       {{"constant", jnum(scan.constant_estimate)}, {"cap", jnum(cap)}});

  bool witnesses = true;
  Json ratios = Json::array();
  for (std::int64_t k = 2; k <= 20; k += 2) {
    const auto w = convex_unboundedness_witness(seq, k);
    ratios.push_back(jnum(w.ratio));
    witnesses = witnesses && w.ratio > std::sqrt(2.0) * double(k + 3) &&
                std::abs(w.numerator - 2.0 * std::sqrt(2.0)) < 1e-12 &&
                w.denominator < 2.0 / double(k + 3) && w.denominator > 0.0;
  }
  push(r, "convex_unboundedness_ratios_exceed_sqrt2_k_plus_3", witnesses,
       {{"ratios", ratios}});

  bool family = true;
  for (std::int64_t k = 0; 3 * k + 3 <= horizon; ++k)
    for (double nv : example_6_2_family_norms(seq, k))
      family = family && nv >= 2.0 / 3.0 - 1e-12 && nv <= std::sqrt(5.0) + 1e-12;
  push(r, "family_norms_within_two_thirds_and_sqrt5", family);
  return r;
}

ReproduceResult reproduce_orbit_demo(std::int64_t horizon, std::uint64_t seed) {
  ReproduceResult r;
  r.example = "orbit_demo";
  if (horizon < 512) horizon = 512;
  const double c1 = std::cos(1.0), s1 = std::sin(1.0);
  const std::vector<std::vector<double>> rot = {{0.999 * c1, -0.999 * s1},
                                                {0.999 * s1, 0.999 * c1}};
  const auto orbit = make_operator_orbit(rot, {1.0, 0.0}, horizon);

  bool norms = true;
  for (std::int64_t k = 1; k <= horizon; ++k)
    norms = norms && std::abs(orbit.norm(k) - std::pow(0.999, double(k))) < 1e-9;
  push(r, "contraction_orbit_norms", norms);

  const auto erg = ergodicity_test(orbit, 1e-2);
  push(r, "contraction_orbit_ergodic", erg.verdict.verdict == Verdict::decaying,
       {{"tail_max", jnum(erg.verdict.tail_max)}});

  const auto scan = shift_bound_scan(orbit, ShiftScheme::convex, 8, horizon - 9, 4000, seed);
  push(r, "contraction_orbit_convex_constant_at_most_one",
       scan.constant_estimate <= 1.0 + 1e-9, {{"constant", jnum(scan.constant_estimate)}});

  const auto zero = make_operator_orbit({{0.0, 0.0}, {0.0, 0.0}}, {1.0, 0.0}, 16);
  bool all_zero = true;
  for (std::int64_t k = 1; k <= 16; ++k) all_zero = all_zero && zero.norm(k) == 0.0;
  push(r, "zero_operator_orbit_vanishes", all_zero);

  const auto ident = make_operator_orbit({{1.0, 0.0}, {0.0, 1.0}}, {1.0, 0.0}, 64);
  bool const_mean = true;
  for (std::int64_t n = 1; n <= 64; n *= 2)
    const_mean = const_mean && std::abs(windowed_mean_norm(ident, 0, n) - 1.0) < 1e-12;
  push(r, "identity_orbit_mean_stays_one", const_mean);
  return r;
}

}  // namespace

ReproduceResult reproduce_example(const std::string& name, std::int64_t horizon,
                                  std::uint64_t seed, std::int64_t, double) {
  ReproduceResult r;
  if (name == "example_3_1") r = reproduce_3_1(horizon, seed);
  else if (name == "example_3_2") r = reproduce_3_2(horizon, seed);
  else if (name == "example_3_3") r = reproduce_3_3(horizon, seed);
  else if (name == "example_6_2") r = reproduce_6_2(horizon, seed);
  else if (name == "orbit_demo") r = reproduce_orbit_demo(horizon, seed);
  else throw std::invalid_argument("reproduce: unknown example '" + name + "'");
  r.ok = true;
  for (const auto& a : r.assertions) r.ok = r.ok && a.pass;
  return r;
}

}  // namespace wmix
