#pragma once

#include <cstdint>

#include "lqg/params.hpp"
#include "lqg/path.hpp"
#include "lqg/rng.hpp"

namespace lqg {

/// Point of the cone C_theta in polar form.
struct ConePoint {
  double r = 0;
  double phi = 0;

  Point2 cartesian() const;
  static ConePoint from_cartesian(Point2 xy);
};

enum class BoundarySide { angle_zero, angle_theta };

/// Point on one of the two boundary rays of C_theta.
struct BoundaryPoint {
  double dist = 0;
  BoundarySide side = BoundarySide::angle_zero;

  /// +dist on the angle-zero ray, -dist on the angle-theta ray.
  double signed_coordinate() const { return side == BoundarySide::angle_zero ? dist : -dist; }
  static BoundaryPoint from_signed(double s) {
    return s >= 0 ? BoundaryPoint{s, BoundarySide::angle_zero} : BoundaryPoint{-s, BoundarySide::angle_theta};
  }
};

/// 2^{-lambda/2} / Gamma(lambda/2), normalizer of the time-t law.
double time_t_constant(const GammaParams& params);
/// 2^{-lambda} / Gamma(1+lambda), normalizer of the excursion survival law.
double survival_constant(const GammaParams& params);

/// Density of Z_t given {tau > t} for cone Brownian motion started at the vertex.
double time_t_pdf(const GammaParams& params, ConePoint z, double t);

/// Harmonic measure density (w.r.t. arclength) of the exit point u seen from interior z:
///   |z|^l |u|^{l-1} sin(l arg z) / (theta |z^l - u^l|^2),  l = lambda,
/// with u^l real, positive on the angle-zero ray and negative on the angle-theta ray.
double exit_point_pdf_given_z(const GammaParams& params, ConePoint z, BoundaryPoint u);

/// CDF of the signed exit coordinate (see BoundaryPoint::signed_coordinate) seen from z.
double exit_point_cdf_given_z(const GammaParams& params, ConePoint z, double signed_u);

/// Unnormalized law of Z_tau given {tau > t} for the vertex-started process:
///   |u|^{l-1} t^{-1-l/2} ( t e^{-|u|^2/2t} + 2^l t^{1+l} |u|^{-2l} lowerGamma(1+l, |u|^2/2t) ).
double tau_marginal_shape(const GammaParams& params, BoundaryPoint u, double t);

/// Survival probability of the normalized vertex-to-u cone excursion past time t.
double cone_survival(const GammaParams& params, BoundaryPoint u, double t);

struct SurvivalScalingOptions {
  /// Euler step as a fraction of t.
  double dt_fraction = 1.0 / 2000.0;
};

/// Monte Carlo estimate of P^eps[tau > 4t] / P^eps[tau > t] for Brownian motion started at the cone
/// vertex and conditioned to survive until eps; the exact value is 4^{-lambda/2}.
///
/// Entrance points at time eps are drawn from the exact time-eps marginal, paths are advanced with
/// Brownian-bridge killing at both rays, and the survivors at time t are resampled back to
/// n_samples particles before continuing to 4t.
double survival_scaling_check(const GammaParams& params, double eps, double t, std::size_t n_samples,
                              RngStream stream, const SurvivalScalingOptions& options = {});

}  // namespace lqg
