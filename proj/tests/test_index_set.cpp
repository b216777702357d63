#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "wmix/index_set.hpp"

using wmix::FiniteIndexSet;
using wmix::IndexSetSpec;

TEST_CASE("construction enforces ordering and range") {
  CHECK_THROWS_AS(FiniteIndexSet({3, 3}, 10), std::invalid_argument);
  CHECK_THROWS_AS(FiniteIndexSet({5, 4}, 10), std::invalid_argument);
  CHECK_THROWS_AS(FiniteIndexSet({0}, 10), std::invalid_argument);  // 1-based by default
  CHECK_THROWS_AS(FiniteIndexSet({11}, 10), std::invalid_argument);
  CHECK_THROWS_AS(FiniteIndexSet({}, 0), std::invalid_argument);
  CHECK_NOTHROW(FiniteIndexSet({0, 4}, 10, /*allow_zero=*/true));
}

TEST_CASE("membership and counts agree with the element list") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t h = 50 + std::int64_t(rng() % 1000);
    std::vector<std::int64_t> e;
    for (std::int64_t v = 1; v <= h; ++v)
      if (rng() % 4 == 0) e.push_back(v);
    const FiniteIndexSet s(e, h);
    std::int64_t a = 1 + std::int64_t(rng() % h);
    std::int64_t b = 1 + std::int64_t(rng() % h);
    if (a > b) std::swap(a, b);
    std::int64_t brute = 0;
    for (std::int64_t v = a; v <= b; ++v)
      brute += std::binary_search(e.begin(), e.end(), v) ? 1 : 0;
    CHECK(s.count_window(a, b) == brute);
    CHECK(s.count_prefix(h) == std::int64_t(e.size()));
    for (int probe = 0; probe < 20; ++probe) {
      const std::int64_t v = 1 + std::int64_t(rng() % h);
      CHECK(s.contains(v) == std::binary_search(e.begin(), e.end(), v));
    }
  }
}

TEST_CASE("generators") {
  const auto mult = FiniteIndexSet::multiples(4, 20);
  CHECK(mult.elements() == std::vector<std::int64_t>{4, 8, 12, 16, 20});

  const auto blocks = FiniteIndexSet::blocks({1, 11}, {3, 2}, 12);
  CHECK(blocks.elements() == std::vector<std::int64_t>{1, 2, 3, 11, 12});

  const auto fact = FiniteIndexSet::factorial_blocks(4, 100);
  // [1,2] ∪ [2,4] ∪ [6,9] ∪ [24,28]
  CHECK(fact.elements() ==
        std::vector<std::int64_t>{1, 2, 3, 4, 6, 7, 8, 9, 24, 25, 26, 27, 28});

  const auto sq = FiniteIndexSet::squares(30);
  CHECK(sq.elements() == std::vector<std::int64_t>{1, 4, 9, 16, 25});

  CHECK(FiniteIndexSet::full_range(4).size() == 4);
}

TEST_CASE("set algebra") {
  const auto a = FiniteIndexSet::multiples(2, 30);
  const auto b = FiniteIndexSet::multiples(3, 30);
  CHECK(a.intersect(b) == FiniteIndexSet::multiples(6, 30));
  const auto u = a.unite(b);
  CHECK(u.contains(2));
  CHECK(u.contains(3));
  CHECK(!u.contains(5));
  CHECK(u.size() == 15 + 10 - 5);
}

TEST_CASE("spec builder") {
  IndexSetSpec s;
  s.kind = "multiples";
  s.p = 3;
  CHECK(s.build(30).size() == 10);
  s.kind = "nonsense";
  CHECK_THROWS_AS(s.build(30), std::invalid_argument);
}
