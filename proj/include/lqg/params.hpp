#pragma once

#include <array>
#include <nlohmann/json.hpp>

namespace lqg {

/// Row-major 2x2 matrix.
struct Mat2 {
  double a00 = 0, a01 = 0, a10 = 0, a11 = 0;

  std::array<double, 2> apply(double x, double y) const { return {a00 * x + a01 * y, a10 * x + a11 * y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Mat2 transpose() const { return {a00, a10, a01, a11}; }
  double det() const { return a00 * a11 - a01 * a10; }
};

/// LQG parameter gamma together with every constant derived from it.
///
/// Construct through derive_params(); the derived fields are never set independently.
struct GammaParams {
  double gamma = 0;
  double a_const = 1;  // covariance scale of the boundary-length Brownian motion
  double kappa = 0;
  double kappa_prime = 0;
  double q_coef = 0;
  double theta = 0;       // cone opening angle pi*gamma^2/4
  double lambda_exp = 0;  // pi/theta = 4/gamma^2
  Mat2 shear;             // maps the first quadrant onto the cone C_theta
  Mat2 shear_inv;
  Mat2 cov;  // per-unit-time covariance of (L, R)

  /// 1/(a sin theta): length of the image of (1,0) under the shear.
  double unit_boundary_distance() const;
};

/// Throws ParameterError unless 0 < gamma < 2 and a_const > 0.
GammaParams derive_params(double gamma, double a_const = 1.0);

void to_json(nlohmann::json& j, const GammaParams& p);
void from_json(const nlohmann::json& j, GammaParams& p);

}  // namespace lqg
