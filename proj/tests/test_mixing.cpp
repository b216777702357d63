#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "wmix/mixing.hpp"
#include "wmix/sequence.hpp"

using namespace wmix;

TEST_CASE("cesaro absolute averages") {
  const auto zero = make_zero_sequence(64);
  const auto f0 = Functional::combination({1}, {1.0});
  CHECK(cesaro_abs_average(zero, f0, 32) == 0.0);

  const auto ortho = make_orthonormal(64);
  const auto e1 = Functional::combination({1}, {1.0});
  for (std::int64_t n : {1, 2, 5, 32})
    CHECK(cesaro_abs_average(ortho, e1, n) == doctest::Approx(1.0 / double(n)));

  // Example 3.1: a point above t_j sees nothing from block j on.
  const auto seq31 = make_example_3_1(512);
  const auto sched = BlockSchedule::standard(512);
  const double t = sched.knots[2] + 1e-6;  // above t_3, so f_k(t) = 0 for k >= n_3 = 3
  const auto dirac = Functional::dirac(t);
  const double v64 = cesaro_abs_average(seq31, dirac, 64);
  CHECK(v64 <= 2.0 / 64.0 + 1e-12);
  CHECK(cesaro_abs_average(seq31, dirac, 512) <= 2.0 / 512.0 + 1e-12);

  CHECK_THROWS_AS(cesaro_abs_average(ortho, e1, 65), std::out_of_range);
}

TEST_CASE("uniform mixing value: orthonormal closed form") {
  const auto ortho = make_orthonormal(512);
  DualSearchOptions opts;
  for (std::int64_t n = 1; n <= 16; ++n) {
    const auto v = uniform_mixing_value(ortho, n, opts);
    CHECK(v.exact);
    CHECK(std::abs(v.lower - 1.0 / std::sqrt(double(n))) <= 1e-12);
    CHECK(v.lower == v.upper);
  }
  // Beyond the cutoff: lower and upper bracket 1/sqrt(n).
  opts.restarts = 128;
  for (std::int64_t n : {64, 256}) {
    const auto v = uniform_mixing_value(ortho, n, opts);
    CHECK(!v.exact);
    const double truth = 1.0 / std::sqrt(double(n));
    CHECK(v.lower <= truth + 1e-12);
    CHECK(v.upper >= truth - 1e-12);
    CHECK(v.lower <= v.upper);
  }
}

TEST_CASE("uniform mixing value: zero sequence and example 3.1 stall") {
  const auto zero = make_zero_sequence(32);
  const auto v = uniform_mixing_value(zero, 8);
  CHECK(v.lower == 0.0);
  CHECK(v.upper == 0.0);

  const auto seq31 = make_example_3_1(512);
  const auto sched = BlockSchedule::standard(512);
  for (std::size_t j = 1; j + 1 < sched.block_starts.size(); ++j) {
    const std::int64_t end = sched.block_starts[j + 1] - 1;
    if (end > 512) break;
    CHECK(uniform_mixing_value(seq31, end).lower >= 0.5);
  }
}

TEST_CASE("windowed uniform mixing") {
  const auto ortho = make_orthonormal(128);
  const auto single = windowed_uniform_mixing(ortho, 17, 17);
  CHECK(single.lower == doctest::Approx(ortho.norm(17)));
  CHECK(single.upper == doctest::Approx(ortho.norm(17)));

  for (std::int64_t len : {2, 8, 16}) {
    const auto v = windowed_uniform_mixing(ortho, 33, 32 + len);
    CHECK(v.exact);
    CHECK(v.lower == doctest::Approx(1.0 / std::sqrt(double(len))).epsilon(1e-12));
  }

  // Example 3.2: a window inside one block is constant with unit norm.
  const auto seq32 = make_example_3_2(512);
  const auto inside = windowed_uniform_mixing(seq32, 9, 16);  // block 5 = [9, 17)
  CHECK(inside.lower == doctest::Approx(1.0));

  CHECK_THROWS_AS(windowed_uniform_mixing(ortho, 5, 4), std::out_of_range);
}

TEST_CASE("scalar specialization: cesaro equals the uniform value") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> gauss;
  const std::int64_t n = 14;
  std::vector<double> a(n);
  for (auto& x : a) x = gauss(rng);
  kernels::GramSection g;
  g.n = n;
  g.m.resize(n * n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) g.at(i, j) = a[i] * a[j];
  const auto scalar = make_gram_explicit(g);
  // Unit functional: x_j / |a_j| for the largest scalar.
  std::int64_t jbest = 0;
  for (std::int64_t i = 1; i < n; ++i)
    if (std::abs(a[i]) > std::abs(a[jbest])) jbest = i;
  const auto f = Functional::combination({jbest + 1}, {1.0 / std::abs(a[jbest])});
  CHECK(scalar.dual_norm(f) == doctest::Approx(1.0));
  const auto uv = uniform_mixing_value(scalar, n);
  CHECK(uv.exact);
  CHECK(uv.lower == doctest::Approx(cesaro_abs_average(scalar, f, n)).epsilon(1e-12));
}

TEST_CASE("uniform value dominates every unit functional's cesaro average") {
  std::mt19937_64 rng(73);
  std::normal_distribution<double> gauss;
  const auto seq32 = make_example_3_2(64);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> idx;
    std::vector<double> c;
    for (std::int64_t i = 1; i <= 16; ++i)
      if (rng() & 1) {
        idx.push_back(i);
        c.push_back(gauss(rng));
      }
    if (idx.empty()) continue;
    const double nrm = seq32.combo_norm(c, idx);
    if (nrm < 1e-9) continue;
    for (auto& x : c) x /= nrm;
    const auto f = Functional::combination(idx, c);
    const std::int64_t n = 1 + std::int64_t(rng() % 16);
    CHECK(cesaro_abs_average(seq32, f, n) <=
          uniform_mixing_value(seq32, n).upper + 1e-9);
  }
}

TEST_CASE("subsequence mean norms") {
  const auto ortho = make_orthonormal(2048);
  const auto all = FiniteIndexSet::full_range(2048);
  for (std::int64_t n : {4, 64, 1024})
    CHECK(subsequence_mean_norm(ortho, all, n) ==
          doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));

  const auto seq32 = make_example_3_2(2048);
  const auto sched = BlockSchedule::standard(2048);
  // Block starts pick one orthonormal vector per block: mean^2 = 1/j.
  std::vector<std::int64_t> starts;
  for (std::int64_t s : sched.block_starts)
    if (s <= 2048) starts.push_back(s);
  const FiniteIndexSet start_set(starts, 2048);
  for (std::int64_t j : {2, 4, 8}) {
    const double v = subsequence_mean_norm(seq32, start_set, j);
    CHECK(v * v == doctest::Approx(1.0 / double(j)).epsilon(1e-12));
  }
  // Full prefixes stall at 1/2.
  for (std::size_t j = 1; j + 1 < sched.block_starts.size(); ++j) {
    const std::int64_t end = sched.block_starts[j + 1] - 1;
    if (end > 2048) break;
    const double v = subsequence_mean_norm(seq32, all, end);
    CHECK(v * v >= 0.25);
  }
  CHECK_THROWS_AS(subsequence_mean_norm(ortho, FiniteIndexSet({1, 2}, 2048), 3),
                  std::invalid_argument);
}

TEST_CASE("lemma 2.1 identity") {
  const auto evens = FiniteIndexSet::multiples(2, 64);
  const auto ortho = make_orthonormal(64);
  const auto c = lemma_2_1_identity(ortho, evens, 10);
  CHECK(c.difference_norm <= 1e-12);
  CHECK(c.ratio == doctest::Approx(0.5));

  const FiniteIndexSet one({1}, 64);
  CHECK(lemma_2_1_identity(ortho, one, 7).ratio == doctest::Approx(1.0 / 7.0));

  std::mt19937_64 rng(79);
  const auto seq32 = make_example_3_2(256);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> e;
    for (std::int64_t v = 1; v <= 256; ++v)
      if (rng() % 3 == 0) e.push_back(v);
    if (e.empty()) continue;
    const FiniteIndexSet k(e, 256);
    const std::int64_t n = e.front() + std::int64_t(rng() % (256 - e.front() + 1));
    CHECK(lemma_2_1_identity(seq32, k, n).difference_norm <= 1e-12);
  }
}

TEST_CASE("theorem 2.3 chain: subsequence means bounded through the identity") {
  const auto ortho = make_orthonormal(512);
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<std::int64_t> e;
    for (std::int64_t v = 1; v <= 512; ++v)
      if (rng() % 3 == 0) e.push_back(v);
    if (e.size() < 8) continue;
    const FiniteIndexSet k(e, 512);
    const std::int64_t n = e[e.size() / 2];
    const auto chain = theorem23_chain(ortho, k, n);
    CHECK(chain.subsequence_mean <= chain.chain_bound + 1e-12);
  }
}

TEST_CASE("failure witness: found on example 3.1, absent on the orthonormal model") {
  const std::int64_t h = 8192;
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= h; n *= 2) ns.push_back(n);
  const std::vector<double> grid = {0.25, 0.125, 0.0625, 0.03125, 0.03, 0.015};

  const auto seq31 = make_example_3_1(h);
  const auto rep = extract_failure_witness(seq31, ns, grid);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->epsilon_o == doctest::Approx(0.03));
  CHECK(rep.witness->anchors.size() >= 3);
  const auto check = verify_failure_witness(seq31, *rep.witness);
  CHECK(check.interval_avoidance);
  CHECK(check.pairings_exceed);
  CHECK(check.cards_large);
  CHECK(check.gaps_grow);
  CHECK(check.dual_norms);
  CHECK(check.ok);

  const auto ortho = make_orthonormal(h);
  const auto rep2 = extract_failure_witness(ortho, ns, grid);
  CHECK(!rep2.witness.has_value());

  const auto zero = make_zero_sequence(h);
  CHECK(!extract_failure_witness(zero, ns, grid).witness.has_value());
}

TEST_CASE("failure witness rejects unnormalized sequences and bad grids") {
  const auto seq62 = make_example_6_2(64);  // bound 2
  CHECK_THROWS_AS(extract_failure_witness(seq62, {1, 2, 4}, {0.1}), std::invalid_argument);
  const auto ortho = make_orthonormal(64);
  CHECK_THROWS_AS(extract_failure_witness(ortho, {1, 2, 4}, {1.5}), std::invalid_argument);
}

TEST_CASE("decay verdicts") {
  std::vector<std::pair<std::int64_t, double>> decay, stall, fail;
  for (std::int64_t n = 1; n <= 64; n *= 2) {
    decay.emplace_back(n, 1.0 / std::sqrt(double(n)));
    stall.emplace_back(n, n == 1 ? 1.0 : 0.5);
    fail.emplace_back(n, 1.0);
  }
  CHECK(decay_verdict(decay, 0.2).verdict == Verdict::decaying);
  CHECK(decay_verdict(stall, 1e-2).verdict == Verdict::stalled);
  CHECK(decay_verdict(fail, 1e-2).verdict == Verdict::failed);
  CHECK(decay_verdict({{1, 0.0}, {2, 0.0}, {4, 0.0}, {8, 0.0}}, 1e-2).verdict ==
        Verdict::decaying);
}
