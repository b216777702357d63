#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "wmix/quadrature.hpp"
#include "wmix/sequence.hpp"

using namespace wmix;

TEST_CASE("block schedule: standard layout and validation") {
  const auto s = BlockSchedule::standard(1024);
  CHECK(s.block_starts[0] == 1);
  CHECK(s.block_starts[1] == 2);
  CHECK(s.block_starts[2] == 3);
  CHECK(s.block_starts[3] == 5);
  CHECK(s.block_starts[4] == 9);
  for (std::size_t j = 0; j + 1 < s.block_starts.size(); ++j)
    CHECK(2 * (s.block_starts[j] - 1) <= s.block_starts[j + 1] - 1);
  CHECK(s.block_of(1) == 1);
  CHECK(s.block_of(2) == 2);
  CHECK(s.block_of(4) == 3);
  CHECK(s.block_of(8) == 4);

  BlockSchedule bad;
  bad.block_starts = {1, 2, 3, 4};  // (3-1)/(4-1) > 1/2
  CHECK_THROWS_WITH_AS(bad.validate(false),
                       doctest::Contains("ratio condition violated at pair (n_3, n_4)"),
                       std::invalid_argument);
}

TEST_CASE("example 3.1: tents with unit sup norm vanishing at the origin") {
  const std::int64_t h = 1024;
  const auto seq = make_example_3_1(h);
  const auto& sched = BlockSchedule::standard(h);
  // First tent lives on [t_2, t_1] = [1/3, 1/2].
  CHECK(seq.model().eval(1, 1.0 / 3.0) == 0.0);
  CHECK(seq.model().eval(1, 0.5) == 0.0);
  CHECK(seq.model().eval(1, (1.0 / 3.0 + 0.5) / 2.0) == doctest::Approx(1.0));
  for (std::int64_t k = 1; k <= h; k += 37) {
    CHECK(seq.model().eval(k, 0.0) == 0.0);
    CHECK(seq.norm(k) == doctest::Approx(1.0));
  }
  // Tent supports follow the block of k.
  const std::int64_t k = 100;
  const auto j = sched.block_of(k);
  CHECK(seq.model().eval(k, (sched.knots[j] + sched.knots[j - 1]) / 2.0) ==
        doctest::Approx(1.0));
}

TEST_CASE("example 3.2: block Gram") {
  const auto seq = make_example_3_2(1024);
  CHECK(seq.gram(1, 1) == 1.0);
  CHECK(seq.gram(2, 1) == 0.0);  // n_2 = 2 starts block 2
  CHECK(seq.gram(3, 4) == 1.0);  // block 3 = {3, 4}
  CHECK(seq.gram(4, 5) == 0.0);
  // Constant block: combo over one block of length L has norm L (all equal).
  std::vector<std::int64_t> idx = {5, 6, 7, 8};  // block 4
  std::vector<double> ones(4, 1.0);
  CHECK(seq.combo_norm(ones, idx) == doctest::Approx(4.0));
}

TEST_CASE("example 3.3: exponent ladder and exact Gram") {
  const auto seq = make_example_3_3(128);
  const auto& sched = monomial_schedule_of(seq);
  CHECK(sched.exponents[0] == BigRational(1));
  CHECK(sched.exponents[1] == BigRational(1) + BigRational(1, 12));
  CHECK(sched.exponents[2] == BigRational(2));
  CHECK(sched.exponents[3] == BigRational(5, 2));
  CHECK(sched.exponents[4] == BigRational(5));

  // Gram of t^1 and t^2 (indices 1 and 3): 1/(1+2+1).
  CHECK(seq.gram(1, 3) == doctest::Approx(0.25).epsilon(1e-15));

  // || t^2 - t^2.5 ||^2 = 1/330, closed form against quadrature.
  std::vector<double> w = {1.0, -1.0};
  std::vector<std::int64_t> idx = {3, 4};
  const double nrm = seq.combo_norm(w, idx);
  CHECK(nrm * nrm == doctest::Approx(1.0 / 330.0).epsilon(1e-12));
  const double quad =
      integrate_01([](double t) { return std::pow(t * t - std::pow(t, 2.5), 2.0); });
  CHECK(nrm * nrm == doctest::Approx(quad).epsilon(1e-11));

  const MonomialExact exact{sched};
  CHECK(exact.diff_norm_sq(3, 4) == BigRational(1, 330));
}

TEST_CASE("example 3.3: quadrature agrees with the closed-form Gram") {
  const auto seq = make_example_3_3(128);
  const auto& sched = monomial_schedule_of(seq);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const std::int64_t j = 1 + std::int64_t(rng() % 128), k = 1 + std::int64_t(rng() % 128);
    const double beta = to_double(sched.exponents[j - 1] + sched.exponents[k - 1]);
    const double quad = integrate_01([&](double x) { return std::pow(x, beta); });
    CHECK(std::abs(quad - seq.gram(j, k)) <= 1e-9);
  }
}

TEST_CASE("example 3.3: shifted combination norms never increase") {
  const std::int64_t h = 128;
  const auto seq = make_example_3_3(h);
  std::mt19937_64 rng(9);
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t p = 1 + std::int64_t(rng() % 8);
    std::vector<double> w(p);
    double total = 0.0;
    for (auto& x : w) {
      x = expo(rng);
      total += x;
    }
    for (auto& x : w) x /= total;
    double prev = 1e300;
    for (std::int64_t k = 0; k + p <= h; ++k) {
      std::vector<std::int64_t> idx(p);
      for (std::int64_t i = 0; i < p; ++i) idx[i] = 1 + i + k;
      const double v = seq.combo_norm(w, idx);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("example 6.2: norms, angles and the orthogonality layout") {
  const std::int64_t h = 320;
  const auto seq = make_example_6_2(h);
  for (std::int64_t k = 0; 3 * k + 1 <= h; k += 7)
    CHECK(seq.norm(3 * k + 1) == doctest::Approx(2.0));

  // || u_k - v_k || = 2 sin(theta_k / 2) with theta_k = 1/(k+4), inside
  // (0, 1/(k+3)); u_k = x_{3k+1}/2 and v_k sits at slot 2 or 3 by parity.
  for (std::int64_t k = 0; k <= 100 && 3 * k + 3 <= h; ++k) {
    const std::int64_t v_slot = (k % 2 == 0) ? 3 * k + 2 : 3 * k + 3;
    std::vector<double> w = {0.5, 1.0};  // u_k + (-v_k) since the slot holds -v_k
    std::vector<std::int64_t> idx = {3 * k + 1, v_slot};
    const double diff = seq.combo_norm(w, idx);
    const double theta = example_6_2_theta(k);
    CHECK(diff == doctest::Approx(2.0 * std::sin(theta / 2.0)).epsilon(1e-13));
    CHECK(diff > 0.0);
    CHECK(diff < 1.0 / double(k + 3));
  }

  // || 2u_{k+1} + 2w_{k+1} || = 2 sqrt(2) for even k.
  for (std::int64_t k = 2; k <= 20; k += 2) {
    std::vector<double> w = {1.0, 2.0};
    std::vector<std::int64_t> idx = {3 * (k + 1) + 1, 3 * (k + 1) + 2};
    CHECK(seq.combo_norm(w, idx) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  }

  // Cross-family Gram vanishes; family norms stay within [2/3, sqrt(5)].
  CHECK(seq.gram(1, 4) == 0.0);
  CHECK(seq.gram(2, 6) == 0.0);
  for (std::int64_t k = 0; 3 * k + 3 <= h; ++k)
    for (double nv : example_6_2_family_norms(seq, k)) {
      CHECK(nv >= 2.0 / 3.0);
      CHECK(nv <= std::sqrt(5.0) + 1e-12);
    }
}

TEST_CASE("operator orbits") {
  const auto zero = make_operator_orbit({{0.0, 0.0}, {0.0, 0.0}}, {1.0, 0.0}, 20);
  for (std::int64_t k = 1; k <= 20; ++k) CHECK(zero.norm(k) == 0.0);

  const auto ident = make_operator_orbit({{1.0, 0.0}, {0.0, 1.0}}, {1.0, 0.0}, 20);
  for (std::int64_t k = 1; k <= 20; ++k) CHECK(ident.norm(k) == 1.0);
  CHECK(ident.gram(3, 17) == 1.0);

  const double c = std::cos(1.0), s = std::sin(1.0);
  const auto rot =
      make_operator_orbit({{0.999 * c, -0.999 * s}, {0.999 * s, 0.999 * c}}, {1.0, 0.0}, 200);
  for (std::int64_t k = 1; k <= 200; k += 13)
    CHECK(rot.norm(k) == doctest::Approx(std::pow(0.999, double(k))).epsilon(1e-10));

  CHECK_THROWS_AS(make_operator_orbit({{1.0, 0.0}}, {1.0, 0.0}, 5), std::invalid_argument);
}

TEST_CASE("gram oracle properties on random models") {
  std::mt19937_64 rng(13);
  const auto orbit = [&] {
    std::normal_distribution<double> gauss;
    std::vector<std::vector<double>> u(3, std::vector<double>(3));
    for (auto& row : u)
      for (auto& x : row) x = gauss(rng) * 0.5;
    return make_operator_orbit(u, {1.0, 0.5, -0.25}, 64);
  }();
  for (int t = 0; t < 50; ++t) {
    const std::int64_t j = 1 + std::int64_t(rng() % 64), k = 1 + std::int64_t(rng() % 64);
    CHECK(orbit.gram(j, k) == orbit.gram(k, j));
  }
  // combo_norm^2 equals the weighted Gram quadratic form.
  for (int t = 0; t < 30; ++t) {
    const std::int64_t p = 1 + std::int64_t(rng() % 6);
    std::vector<std::int64_t> idx(p);
    std::vector<double> w(p);
    std::normal_distribution<double> gauss;
    for (std::int64_t i = 0; i < p; ++i) {
      idx[i] = 1 + std::int64_t(rng() % 64);
      w[i] = gauss(rng);
    }
    double quad = 0.0;
    for (std::int64_t i = 0; i < p; ++i)
      for (std::int64_t j2 = 0; j2 < p; ++j2)
        quad += w[i] * w[j2] * orbit.gram(idx[i], idx[j2]);
    const double nrm = orbit.combo_norm(w, idx);
    CHECK(std::abs(nrm * nrm - quad) <= 1e-10);
  }
}

TEST_CASE("combo_norm edge cases and errors") {
  const auto seq = make_orthonormal(16);
  std::vector<double> w1 = {1.0};
  std::vector<std::int64_t> i1 = {7};
  CHECK(seq.combo_norm(w1, i1) == doctest::Approx(seq.norm(7)));
  std::vector<double> w2 = {1.0, -1.0};
  std::vector<std::int64_t> i2 = {5, 5};
  CHECK(seq.combo_norm(w2, i2) == doctest::Approx(0.0));
  std::vector<std::int64_t> bad = {17};
  CHECK_THROWS_AS(seq.combo_norm(w1, bad), std::out_of_range);
  CHECK_THROWS_AS(seq.gram(0, 3), std::out_of_range);
}

TEST_CASE("functional surfaces") {
  const auto seq31 = make_example_3_1(64);
  const auto f = Functional::dirac(0.4, 1.0);
  CHECK(seq31.dual_norm(f) == 1.0);
  CHECK(seq31.pairing(f, 1) == seq31.model().eval(1, 0.4));
  CHECK_THROWS_AS(Functional::dirac(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Functional::dirac(0.5, 0.25), std::invalid_argument);

  const auto seq = make_orthonormal(16);
  const auto g = Functional::combination({1, 2}, {0.6, 0.8});
  CHECK(seq.dual_norm(g) == doctest::Approx(1.0));
  CHECK(seq.pairing(g, 1) == doctest::Approx(0.6));
  CHECK(seq.pairing(g, 3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(seq.pairing(f, 1), std::logic_error);  // dirac on inner-product model
}

TEST_CASE("gram explicit model validation") {
  kernels::GramSection g;
  g.n = 2;
  g.m = {1.0, 0.3, 0.3, 1.0};
  CHECK_NOTHROW(make_gram_explicit(g));
  g.m = {1.0, 0.3, 0.2, 1.0};
  CHECK_THROWS_AS(make_gram_explicit(g), std::invalid_argument);
}

TEST_CASE("monomial schedule validation") {
  MonomialSchedule s;
  s.exponents = {BigRational(1), BigRational(1)};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.exponents = {BigRational(-1, 2)};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_example_3_3(3), std::invalid_argument);
}
