#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmix/report.hpp"

namespace wmix {

struct Assertion {
  std::string name;
  bool pass = false;
  Json details;
};

struct ReproduceResult {
  std::string example;
  bool ok = false;
  std::vector<Assertion> assertions;
  Json extra;
  std::vector<CsvSeries> series;
};

/// End-to-end reruns of the worked examples; every assertion mirrors a
/// module-level acceptance check, so a reproduce failure is a build failure.
/// Names: example_3_1 | example_3_2 | example_3_3 | example_6_2 | orbit_demo.
ReproduceResult reproduce_example(const std::string& name, std::int64_t horizon,
                                  std::uint64_t seed, std::int64_t exact_cutoff,
                                  double tolerance);

}  // namespace wmix
