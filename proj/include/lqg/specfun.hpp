#pragma once

#include <cstddef>
#include <functional>

namespace lqg {

struct QuadratureResult {
  double value = 0;
  double abs_error_estimate = 0;
  std::size_t evaluations = 0;
};

/// Lower incomplete gamma integral_0^x y^(a-1) e^(-y) dy (not regularized).
double truncated_gamma(double a, double x);

/// Regularized lower/upper incomplete gamma P(a,x), Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// sin(phi)^2 / |s e^{i phi} - 1|^2
double residue_integrand(double s, double phi);

/// Closed form of integral_0^pi residue_integrand(s, phi) dphi: pi/2 for s <= 1, pi/(2 s^2) otherwise.
double residue_integral(double s);

/// Adaptive Gauss-Kronrod (7/15) quadrature with bisection of the worst interval.
///
/// `hi` may be +infinity; the tail is mapped to [0,1) by x = lo + u/(1-u).
/// Throws QuadratureError (carrying the partial result) when `max_evaluations` is exhausted
/// before the global error estimate drops below `tol`.
QuadratureResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                              double tol, std::size_t max_evaluations = 2'000'000);

}  // namespace lqg
