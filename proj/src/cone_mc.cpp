#include <omp.h>

#include <cmath>
#include <string>
#include <vector>

#include "lqg/cone.hpp"
#include "lqg/error.hpp"
#include "lqg/excursion.hpp"

namespace lqg {
namespace {

// Advances standard planar BM for `steps` steps of size h, killing it at either ray; a step whose
// endpoints are both inside still kills with the Brownian-bridge crossing probability of each line.
bool survive(const detail::ConeGeometry& g, Point2& w, std::size_t steps, double h, Rng& rng) {
  const double sq = std::sqrt(h);
  double d0 = g.d_zero(w), dt0 = g.d_theta(w);
  for (std::size_t k = 0; k < steps; ++k) {
    const Point2 next{w[0] + sq * rng.normal(), w[1] + sq * rng.normal()};
    const double d1 = g.d_zero(next), dt1 = g.d_theta(next);
    if (d1 <= 0.0 || dt1 <= 0.0) return false;
    const double p_zero = std::exp(-2.0 * d0 * d1 / h);
    const double p_theta = std::exp(-2.0 * dt0 * dt1 / h);
    if (rng.uniform() < p_zero || rng.uniform() < p_theta) return false;
    w = next;
    d0 = d1;
    dt0 = dt1;
  }
  return true;
}

}  // namespace

double survival_scaling_check(const GammaParams& params, double eps, double t, std::size_t n_samples,
                              RngStream stream, const SurvivalScalingOptions& options) {
  if (!(eps > 0.0)) throw ParameterError("survival_scaling_check: eps must be positive");
  if (!(t > eps)) throw ParameterError("survival_scaling_check: require t > eps");
  if (n_samples == 0) throw ParameterError("survival_scaling_check: n_samples must be positive");
  if (!(options.dt_fraction > 0.0 && options.dt_fraction < 1.0)) {
    throw ParameterError("survival_scaling_check: dt_fraction must lie in (0,1)");
  }
  const detail::ConeGeometry geo(params.theta);
  const double dt = options.dt_fraction * t;
  const auto n = static_cast<std::int64_t>(n_samples);

  // Stage 1: eps -> t.
  const auto steps1 = static_cast<std::size_t>(std::ceil((t - eps) / dt));
  const double h1 = (t - eps) / static_cast<double>(steps1);
  std::vector<Point2> pos(n_samples);
  std::vector<char> alive(n_samples, 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng(stream.substream(static_cast<std::uint64_t>(i)));
    Point2 w = sample_shimura_entrance(params, eps, rng).cartesian();
    alive[i] = survive(geo, w, steps1, h1, rng) ? 1 : 0;
    pos[i] = w;
  }
  std::vector<Point2> survivors;
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (alive[i]) survivors.push_back(pos[i]);
  }
  if (survivors.empty()) {
    throw SamplingError("survival_scaling_check: no path survived to time t", n_samples, 0);
  }

  // Stage 2: resample the survivors to n particles, then t -> 4t.
  Rng picker(stream.substream(2 * n_samples + 1));
  std::vector<Point2> start(n_samples);
  for (auto& s : start) s = survivors[picker.index(survivors.size())];
  const auto steps2 = static_cast<std::size_t>(std::ceil(3.0 * t / dt));
  const double h2 = 3.0 * t / static_cast<double>(steps2);
  std::int64_t kept = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : kept)
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng(stream.substream(n_samples + static_cast<std::uint64_t>(i)));
    Point2 w = start[i];
    if (survive(geo, w, steps2, h2, rng)) ++kept;
  }
  return static_cast<double>(kept) / static_cast<double>(n_samples);
}

}  // namespace lqg
