#include "lqg/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lqg/error.hpp"
#include "lqg/specfun.hpp"

namespace lqg {

Point2 ConePoint::cartesian() const { return {r * std::cos(phi), r * std::sin(phi)}; }

ConePoint ConePoint::from_cartesian(Point2 xy) { return {std::hypot(xy[0], xy[1]), std::atan2(xy[1], xy[0])}; }

double time_t_constant(const GammaParams& params) {
  const double l = params.lambda_exp;
  return std::exp(-0.5 * l * std::numbers::ln2 - std::lgamma(0.5 * l));
}

double survival_constant(const GammaParams& params) {
  const double l = params.lambda_exp;
  return std::exp(-l * std::numbers::ln2 - std::lgamma(1.0 + l));
}

double time_t_pdf(const GammaParams& params, ConePoint z, double t) {
  if (!(t > 0.0)) throw DomainError("time_t_pdf: t must be positive");
  if (z.phi < 0.0 || z.phi > params.theta || z.r < 0.0) return 0.0;
  if (z.r == 0.0) return 0.0;
  const double l = params.lambda_exp;
  const double log_mag = l * std::log(z.r) - (1.0 + 0.5 * l) * std::log(t) - z.r * z.r / (2.0 * t);
  return time_t_constant(params) * std::sin(l * z.phi) * std::exp(log_mag);
}

double exit_point_pdf_given_z(const GammaParams& params, ConePoint z, BoundaryPoint u) {
  if (!(z.r > 0.0 && z.phi > 0.0 && z.phi < params.theta)) {
    throw DomainError("exit_point_pdf_given_z: z must lie strictly inside the cone");
  }
  if (!(u.dist > 0.0)) throw DomainError("exit_point_pdf_given_z: u must be away from the vertex");
  const double l = params.lambda_exp;
  const double zl = std::pow(z.r, l);
  const double ul = std::pow(u.dist, l);
  const double x = u.side == BoundarySide::angle_zero ? ul : -ul;
  const double re = zl * std::cos(l * z.phi) - x;
  const double im = zl * std::sin(l * z.phi);
  return im * std::pow(u.dist, l - 1.0) / (params.theta * (re * re + im * im));
}

double exit_point_cdf_given_z(const GammaParams& params, ConePoint z, double signed_u) {
  if (!(z.r > 0.0 && z.phi > 0.0 && z.phi < params.theta)) {
    throw DomainError("exit_point_cdf_given_z: z must lie strictly inside the cone");
  }
  const double l = params.lambda_exp;
  const double zl = std::pow(z.r, l);
  const double x = std::copysign(std::pow(std::abs(signed_u), l), signed_u);
  return 0.5 + std::atan((x - zl * std::cos(l * z.phi)) / (zl * std::sin(l * z.phi))) / std::numbers::pi;
}

double tau_marginal_shape(const GammaParams& params, BoundaryPoint u, double t) {
  if (!(t > 0.0)) throw DomainError("tau_marginal_shape: t must be positive");
  if (!(u.dist > 0.0)) throw DomainError("tau_marginal_shape: u must be away from the vertex");
  const double l = params.lambda_exp;
  const double x = u.dist * u.dist / (2.0 * t);
  const double head = std::exp(std::log(t) - x);
  const double tail = std::exp(l * std::numbers::ln2 + (1.0 + l) * std::log(t) - 2.0 * l * std::log(u.dist)) *
                      truncated_gamma(1.0 + l, x);
  return std::pow(u.dist, l - 1.0) * std::pow(t, -1.0 - 0.5 * l) * (head + tail);
}

double cone_survival(const GammaParams& params, BoundaryPoint u, double t) {
  if (!(t > 0.0)) throw DomainError("cone_survival: t must be positive");
  if (!(u.dist > 0.0)) throw DomainError("cone_survival: u must be away from the vertex");
  const double l = params.lambda_exp;
  const double c6 = survival_constant(params);
  const double x = u.dist * u.dist / (2.0 * t);
  // c6 |u|^{2l} t^{-1-l} * t e^{-x}, assembled in logs.
  const double head = std::exp(std::log(c6) + 2.0 * l * std::log(u.dist) - l * std::log(t) - x);
  const double tail = c6 * std::exp(l * std::numbers::ln2) * truncated_gamma(1.0 + l, x);
  return std::clamp(head + tail, 0.0, 1.0);
}

}  // namespace lqg
