// Serial vs OpenMP excursion batches, and fast vs brute mated-CRT construction.
//   lqg_bench [n_excursions] [n_cells_brute]
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "lqg/bm.hpp"
#include "lqg/excursion.hpp"
#include "lqg/matedcrt.hpp"

using namespace lqg;

template <class F>
static double time_it(F&& f) {
  const double t0 = omp_get_wtime();
  f();
  return omp_get_wtime() - t0;
}

int main(int argc, char** argv) {
  const std::size_t n_exc = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const std::size_t n_brute = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 20000;
  const auto p = derive_params(std::numbers::sqrt2);
  std::printf("threads %d\n", omp_get_max_threads());

  ExcursionOptions opt;
  opt.record_path = false;
  ExcursionBatch a, b;
  const double ts = time_it([&] { a = sample_excursion_batch_serial(p, 0.01, 1.0, 1e-4, n_exc, 1, opt); });
  const double tp = time_it([&] { b = sample_excursion_batch(p, 0.01, 1.0, 1e-4, n_exc, 1, opt); });
  std::printf("excursions n=%zu  serial %.3fs  openmp %.3fs  speedup %.2fx  identical %s\n", n_exc, ts, tp, ts / tp,
              a.durations == b.durations ? "yes" : "NO");

  for (std::size_t cells : {n_brute, std::size_t(1000000)}) {
    const auto path = sample_correlated_bm(p, 0.01, cells * 10, {0, 0}, {2, cells});
    MatedCrtGraph gf, gb;
    const double tf = time_it([&] { gf = build_fast(path, 0.1); });
    std::printf("map n=%zu  fast %.3fs  edges %zu", cells, tf, gf.edges.size());
    if (cells <= n_brute) {
      const double tb = time_it([&] { gb = build_brute(path, 0.1); });
      std::printf("  brute %.3fs  speedup %.1fx  identical %s", tb, tb / tf, gf == gb ? "yes" : "NO");
    }
    std::printf("\n");
  }

  std::vector<Path2D> paths;
  for (std::uint64_t s = 0; s < 16; ++s) paths.push_back(sample_correlated_bm(p, 0.01, 1000000, {0, 0}, {3, s}));
  const double tsb = time_it([&] {
    for (const auto& q : paths) build_fast(q, 0.1);
  });
  const double tpb = time_it([&] { build_fast_batch(paths, 0.1); });
  std::printf("map batch 16 x 1e5 cells  serial %.3fs  openmp %.3fs  speedup %.2fx\n", tsb, tpb, tsb / tpb);
}
