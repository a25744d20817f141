#include "lqg/bm.hpp"

#include <cmath>
#include <string>

#include "lqg/error.hpp"

namespace lqg {

Path2D sample_correlated_bm(const GammaParams& params, double dt, std::size_t n_steps, Point2 start,
                            RngStream stream) {
  if (!(dt > 0.0)) throw ParameterError("sample_correlated_bm: dt must be positive");
  if (n_steps < 1) throw ParameterError("sample_correlated_bm: n_steps must be >= 1");
  Rng rng(stream);
  const double sq = std::sqrt(dt);
  Path2D path;
  path.dt = dt;
  path.points.reserve(n_steps + 1);
  path.points.push_back(start);
  Point2 cur = start;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const Point2 d = correlated_increment(params, sq, rng);
    cur = {cur[0] + d[0], cur[1] + d[1]};
    path.points.push_back(cur);
  }
  return path;
}

Path2D shear_path(const GammaParams& params, const Path2D& path, ShearDirection direction) {
  const Mat2& m = direction == ShearDirection::forward ? params.shear : params.shear_inv;
  Path2D out = path;
  for (auto& pt : out.points) pt = m.apply(pt[0], pt[1]);
  return out;
}

Path2D sample_wedge_boundary_process(const GammaParams& params, double dt, std::size_t n_fwd, std::size_t n_bwd,
                                     double horizon_factor, RngStream stream, std::uint64_t max_attempts) {
  if (!(dt > 0.0)) throw ParameterError("sample_wedge_boundary_process: dt must be positive");
  if (!(horizon_factor >= 1.0)) throw ParameterError("sample_wedge_boundary_process: horizon_factor must be >= 1");
  Rng rng(stream);
  const double sq = std::sqrt(dt);

  std::vector<Point2> backward;
  if (n_bwd > 0) {
    const auto window = static_cast<std::size_t>(std::ceil(horizon_factor * static_cast<double>(n_bwd)));
    backward.reserve(n_bwd + 1);
    std::uint64_t attempts = 0;
    bool accepted = false;
    while (!accepted) {
      if (attempts == max_attempts) {
        throw SamplingError("sample_wedge_boundary_process: rejection budget exhausted after " +
                                std::to_string(attempts) + " windows of " + std::to_string(window) + " steps",
                            attempts, 0);
      }
      ++attempts;
      backward.clear();
      Point2 cur{0.0, sq};
      backward.push_back(cur);
      accepted = true;
      for (std::size_t k = 0; k < window; ++k) {
        const Point2 d = correlated_increment(params, sq, rng);
        cur = {cur[0] + d[0], cur[1] + d[1]};
        if (cur[1] < 0.0) {
          accepted = false;
          break;
        }
        if (k < n_bwd) backward.push_back(cur);
      }
    }
  }

  Path2D path;
  path.dt = dt;
  path.origin_time = -static_cast<double>(n_bwd) * dt;
  path.points.reserve(n_bwd + n_fwd + 1);
  for (std::size_t k = n_bwd; k >= 1; --k) path.points.push_back(backward[k]);
  path.points.push_back({0.0, 0.0});
  Point2 cur{0.0, 0.0};
  for (std::size_t k = 0; k < n_fwd; ++k) {
    const Point2 d = correlated_increment(params, sq, rng);
    cur = {cur[0] + d[0], cur[1] + d[1]};
    path.points.push_back(cur);
  }
  return path;
}

}  // namespace lqg
