#include "lqg/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lqg/error.hpp"

namespace lqg {

double GammaParams::unit_boundary_distance() const { return 1.0 / (a_const * std::sin(theta)); }

GammaParams derive_params(double gamma, double a_const) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw ParameterError("gamma must lie in (0,2), got " + std::to_string(gamma));
  }
  if (!(a_const > 0.0) || !std::isfinite(a_const)) {
    throw ParameterError("a_const must be positive, got " + std::to_string(a_const));
  }
  GammaParams p;
  p.gamma = gamma;
  p.a_const = a_const;
  p.kappa = gamma * gamma;
  p.kappa_prime = 16.0 / p.kappa;
  p.q_coef = gamma / 2.0 + 2.0 / gamma;
  p.theta = std::numbers::pi * p.kappa / 4.0;
  p.lambda_exp = 4.0 / p.kappa;

  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  p.shear = {1.0 / (a_const * s), c / (a_const * s), 0.0, 1.0 / a_const};
  p.shear_inv = {a_const * s, -a_const * c, 0.0, a_const};
  const double a2 = a_const * a_const;
  p.cov = {a2, -a2 * c, -a2 * c, a2};
  return p;
}

void to_json(nlohmann::json& j, const GammaParams& p) {
  j = nlohmann::json{{"gamma", p.gamma}, {"a_const", p.a_const}};
}

void from_json(const nlohmann::json& j, GammaParams& p) {
  p = derive_params(j.at("gamma").get<double>(), j.value("a_const", 1.0));
}

}  // namespace lqg
