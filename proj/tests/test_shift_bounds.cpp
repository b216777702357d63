#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "wmix/sequence.hpp"
#include "wmix/shift_bounds.hpp"

using namespace wmix;

TEST_CASE("convex scan on the monomial model stays at or below one") {
  const auto seq = make_example_3_3(128);
  const auto rep = shift_bound_scan(seq, ShiftScheme::convex, 8, 100, 2000, 11);
  CHECK(rep.constant_estimate <= 1.0 + 1e-9);
  CHECK(rep.constant_estimate > 0.0);
  CHECK(rep.samples_evaluated == 2000);
  // Worst case replays to the same ratio.
  const auto replay = replay_shift_sample(seq, rep.worst_case);
  CHECK(replay.ratio == doctest::Approx(rep.worst_case.ratio).epsilon(1e-12));
}

TEST_CASE("zero-one scan on example 6.2 respects the block-counting cap") {
  const auto seq = make_example_6_2(128);
  const auto rep = shift_bound_scan(seq, ShiftScheme::zero_one, 30, 90, 3000, 13);
  CHECK(rep.constant_estimate <= std::sqrt(45.0 / 2.0) + 1e-9);
  CHECK(rep.constant_estimate >= 1.0);  // shifting one block vector already gives 1-ish
  const auto replay = replay_shift_sample(seq, rep.worst_case);
  CHECK(replay.ratio == doctest::Approx(rep.worst_case.ratio).epsilon(1e-12));
}

TEST_CASE("contraction orbit: every sampled ratio stays at or below one") {
  const double c = std::cos(1.0), s = std::sin(1.0);
  const auto orbit =
      make_operator_orbit({{0.999 * c, -0.999 * s}, {0.999 * s, 0.999 * c}}, {1.0, 0.0}, 256);
  for (auto scheme : {ShiftScheme::convex, ShiftScheme::zero_one}) {
    const auto rep = shift_bound_scan(orbit, scheme, 8, 200, 1500, 17);
    CHECK(rep.constant_estimate <= 1.0 + 1e-9);
  }
}

TEST_CASE("zero-one samples are valid convex samples: estimates nest on a fixed model") {
  // Every 0/1 weight vector is admissible for the convex scheme, so a convex
  // scan seeded over the union of both sample sets dominates the 0/1 max.
  const auto seq = make_example_6_2(128);
  const auto zo = shift_bound_scan(seq, ShiftScheme::zero_one, 10, 50, 1000, 19);
  const auto replay = replay_shift_sample(seq, zo.worst_case);
  // The worst 0/1 configuration is itself a nonnegative-weight configuration,
  // so the true convex constant is at least this ratio.
  CHECK(replay.ratio <= std::sqrt(45.0 / 2.0) + 1e-9);
  CHECK(replay.ratio == doctest::Approx(zo.constant_estimate).epsilon(1e-12));
}

TEST_CASE("block-counting bounds (6.1)/(6.2) on sampled 0/1 configurations") {
  const auto seq = make_example_6_2(160);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t p = 1 + std::int64_t(rng() % 24);
    std::vector<std::int64_t> idx;
    for (std::int64_t j = 1; j <= p; ++j)
      if (rng() & 1) idx.push_back(j);
    if (idx.empty()) continue;
    const std::int64_t shift = 1 + std::int64_t(rng() % 90);
    std::vector<double> w(idx.size(), 1.0);
    std::vector<std::int64_t> shifted(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) shifted[i] = idx[i] + shift;

    std::vector<char> blocks_touched(200, 0);
    for (std::int64_t j : idx) blocks_touched[example_6_2_block_of(j)] = 1;
    std::int64_t q = 0;
    for (char b : blocks_touched) q += b;

    const double den = seq.combo_norm(w, idx);
    const double num = seq.combo_norm(w, shifted);
    CHECK(den >= std::sqrt(4.0 * double(q) / 9.0) - 1e-12);
    CHECK(num <= std::sqrt(10.0 * double(q)) + 1e-12);
  }
}

TEST_CASE("convex unboundedness witness on example 6.2") {
  const auto seq = make_example_6_2(128);
  const auto w2 = convex_unboundedness_witness(seq, 2);
  CHECK(w2.numerator == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(w2.denominator == doctest::Approx(4.0 * std::sin(1.0 / 12.0)).epsilon(1e-13));
  CHECK(w2.denominator < 2.0 / 5.0);
  CHECK(w2.ratio > std::sqrt(2.0) * 5.0);

  const auto w20 = convex_unboundedness_witness(seq, 20);
  CHECK(w20.ratio > std::sqrt(2.0) * 23.0);

  CHECK_THROWS_AS(convex_unboundedness_witness(seq, 3), std::invalid_argument);
  CHECK_THROWS_AS(convex_unboundedness_witness(seq, 200), std::invalid_argument);
}

TEST_CASE("non-orbit certificate for the monomial model") {
  const auto seq = make_example_3_3(128);
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; k <= 101; k += 4) ks.push_back(k);
  const auto certs = non_orbit_certificate(seq, ks);
  CHECK(certs.size() == 26);
  for (const auto& c : certs) {
    CHECK(c.holds_exactly);
    CHECK(c.paper_bound_holds);
    CHECK(c.lhs >= c.rhs);
    CHECK(c.implied_operator_norm == doctest::Approx(std::sqrt(double(c.k))));
  }
  // k = 1: || f_3 - f_4 ||^2 = 1/330 against 1 * || f_1 - f_2 ||^2 = 1/2109.
  CHECK(certs[0].lhs * certs[0].lhs == doctest::Approx(1.0 / 330.0).epsilon(1e-12));
  CHECK(certs[0].rhs * certs[0].rhs == doctest::Approx(1.0 / 2109.0).epsilon(1e-12));

  CHECK_THROWS_AS(non_orbit_certificate(seq, {2}), std::invalid_argument);
}

TEST_CASE("scan rejects ranges beyond the horizon") {
  const auto seq = make_example_3_3(64);
  CHECK_THROWS_AS(shift_bound_scan(seq, ShiftScheme::convex, 32, 40, 100, 1),
                  std::invalid_argument);
}
