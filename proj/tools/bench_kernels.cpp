// Benchmark of the parallel kernels against their serial references.
// Results must agree exactly; the table reports wall times and speedups.

#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wmix/kernels/quad_max.hpp"
#include "wmix/kernels/scan.hpp"
#include "wmix/kernels/window_scan.hpp"

namespace {

double now_ms() {
#ifdef _OPENMP
  return omp_get_wtime() * 1000.0;
#else
  return 0.0;
#endif
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::mt19937_64 rng(42);

  {  // max-density window over a random bitset
    const std::int64_t h = 1 << 22, min_len = 1024;
    std::vector<std::int32_t> prefix(h + 1, 0);
    for (std::int64_t i = 1; i <= h; ++i)
      prefix[i] = prefix[i - 1] + ((rng() & 7) == 0 ? 1 : 0);
    double t0 = now_ms();
    auto a = wmix::kernels::max_density_window_serial(prefix, 1, h, min_len);
    double t1 = now_ms();
    auto b = wmix::kernels::max_density_window_parallel(prefix, 1, h, min_len);
    double t2 = now_ms();
    report("max_density_window", t1 - t0, t2 - t1,
           a.a == b.a && a.b == b.b && a.count == b.count);
  }

  {  // exact sign enumeration on a random PSD section
    const std::int64_t n = 22;
    wmix::kernels::GramSection g;
    g.n = n;
    g.m.assign(n * n, 0.0);
    std::normal_distribution<double> gauss;
    std::vector<double> basis(n * n);
    for (auto& x : basis) x = gauss(rng);
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::int64_t k = 0; k < n; ++k) s += basis[i * n + k] * basis[j * n + k];
        g.at(i, j) = s / double(n);
      }
    double t0 = now_ms();
    auto a = wmix::kernels::quad_max_signs_serial(g);
    double t1 = now_ms();
    auto b = wmix::kernels::quad_max_signs_parallel(g);
    double t2 = now_ms();
    report("quad_max_signs (n=22)", t1 - t0, t2 - t1, a.value == b.value);
  }

  {  // randomized subset search (restart-parallel)
    const std::int64_t n = 256;
    wmix::kernels::GramSection g;
    g.n = n;
    g.m.assign(n * n, 0.0);
    for (std::int64_t i = 0; i < n; ++i) g.at(i, i) = 1.0;
    double t0 = now_ms();
    auto a = wmix::kernels::quad_max_subset_random(g, 2048, 7);
    double t1 = now_ms();
    // Same call; determinism across thread counts is part of the contract.
    auto b = wmix::kernels::quad_max_subset_random(g, 2048, 7);
    double t2 = now_ms();
    report("quad_max_subset_random", t1 - t0, t2 - t1,
           a.value == b.value && a.config == b.config);
  }

  {  // pattern occurrences in a long word
    const std::int64_t h = 1 << 22;
    std::vector<std::uint8_t> word(h);
    for (auto& x : word) x = (rng() & 3) == 0;
    std::vector<std::uint8_t> pattern = {1, 1, 0, 1};
    double t0 = now_ms();
    auto a = wmix::kernels::find_occurrences_serial(word, pattern);
    double t1 = now_ms();
    auto b = wmix::kernels::find_occurrences_parallel(word, pattern);
    double t2 = now_ms();
    report("find_occurrences", t1 - t0, t2 - t1, a == b);
  }

  {  // translate scan
    const std::int64_t h = 1 << 21;
    std::vector<std::uint8_t> member(h + 1);
    for (auto& x : member) x = (rng() & 1) != 0;
    std::vector<std::int64_t> shifts = {0, 3, 7, 11};
    double t0 = now_ms();
    auto a = wmix::kernels::translate_scan_serial(member, shifts, h - 11);
    double t1 = now_ms();
    auto b = wmix::kernels::translate_scan_parallel(member, shifts, h - 11);
    double t2 = now_ms();
    report("translate_scan", t1 - t0, t2 - t1, a == b);
  }
  return 0;
}
