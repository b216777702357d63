#pragma once

#include <array>
#include <cstdint>

namespace wmix {

/// Composite 16-node Gauss-Legendre on [0, 1], `panels` equal panels.
/// Used as an independent check against closed-form inner products.
template <class F>
double integrate_01(F&& f, int panels = 32) {
  // 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirror).
  static constexpr std::array<double, 8> xs = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
      0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  static constexpr std::array<double, 8> ws = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
      0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  double total = 0.0;
  const double h = 1.0 / double(panels);
  for (int p = 0; p < panels; ++p) {
    const double mid = (double(p) + 0.5) * h, half = 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
      s += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    total += s * half;
  }
  return total;
}

}  // namespace wmix
