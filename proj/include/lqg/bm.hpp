#pragma once

#include <cmath>
#include <cstdint>

#include "lqg/params.hpp"
#include "lqg/path.hpp"
#include "lqg/rng.hpp"

namespace lqg {

enum class ShearDirection { forward, inverse };

/// One increment of the (L,R) Brownian motion over time dt, via the Cholesky factor of cov.
inline Point2 correlated_increment(const GammaParams& p, double sqrt_dt, Rng& rng) {
  const double n1 = rng.normal();
  const double n2 = rng.normal();
  const double c = -p.cov.a01 / (p.a_const * p.a_const);  // cos(theta)
  const double s = std::sqrt(1.0 - c * c);
  return {p.a_const * sqrt_dt * n1, p.a_const * sqrt_dt * (-c * n1 + s * n2)};
}

/// (L,R) Brownian motion with covariance dt*params.cov per step, n_steps+1 points from `start`.
Path2D sample_correlated_bm(const GammaParams& params, double dt, std::size_t n_steps, Point2 start,
                            RngStream stream);

/// Pointwise shear (Lambda) or inverse shear of a path.
Path2D shear_path(const GammaParams& params, const Path2D& path, ShearDirection direction);

/// Two-sided boundary-length path through (0,0) at time 0.
///
/// t >= 0: unconditioned correlated BM, n_fwd steps. t < 0: an independent correlated BM started
/// at (0, sqrt(dt)) and kept only if R stays >= 0 over a window of horizon_factor * n_bwd steps;
/// the first n_bwd steps of the accepted window are reported. Throws SamplingError when
/// `max_attempts` windows are rejected.
Path2D sample_wedge_boundary_process(const GammaParams& params, double dt, std::size_t n_fwd, std::size_t n_bwd,
                                     double horizon_factor, RngStream stream,
                                     std::uint64_t max_attempts = 1'000'000);

}  // namespace lqg
