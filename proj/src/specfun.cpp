#include "lqg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "lqg/error.hpp"

namespace lqg {
namespace {

constexpr int kMaxIter = 10'000;
constexpr double kEps = 1e-16;

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be nonnegative");
}

// sum_{n>=0} x^n / (a (a+1) ... (a+n)), so that gamma_lower = x^a e^{-x} * series.
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum;
}

// Continued fraction (modified Lentz) for the upper tail; gamma_upper = x^a e^{-x} * cf.
double upper_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Kronrod 15-point nodes (positive half) and weights; Gauss 7-point weights on the odd nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {lo, hi, resk * half, std::abs((resk - resg) * half)};
}

}  // namespace

double truncated_gamma(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(a);
  const double prefactor = std::exp(a * std::log(x) - x);
  if (x < a + 1.0) return prefactor * lower_series(a, x);
  return std::tgamma(a) - prefactor * upper_fraction(a, x);
}

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_pref = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) return std::exp(log_pref) * lower_series(a, x);
  return 1.0 - std::exp(log_pref) * upper_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_pref = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) return 1.0 - std::exp(log_pref) * lower_series(a, x);
  return std::exp(log_pref) * upper_fraction(a, x);
}

double residue_integrand(double s, double phi) {
  const double sn = std::sin(phi);
  // |s e^{i phi} - 1|^2 = (s - 1)^2 + 2 s (1 - cos phi), written to avoid cancellation near s = 1.
  const double den = (s - 1.0) * (s - 1.0) + 4.0 * s * std::pow(std::sin(0.5 * phi), 2);
  if (den == 0.0) return 0.5 * (1.0 + std::cos(phi));
  return sn * sn / den;
}

double residue_integral(double s) {
  if (!(s > 0.0)) throw DomainError("residue_integral: s must be positive");
  return s <= 1.0 ? std::numbers::pi / 2.0 : std::numbers::pi / (2.0 * s * s);
}

QuadratureResult integrate_1d(const std::function<double(double)>& f, double lo, double hi, double tol,
                              std::size_t max_evaluations) {
  if (!(tol > 0.0)) throw ParameterError("integrate_1d: tol must be positive");
  if (!(lo < hi)) throw ParameterError("integrate_1d: require lo < hi");
  if (std::isinf(lo)) throw ParameterError("integrate_1d: lower limit must be finite");

  std::function<double(double)> g;
  double a = lo, b = hi;
  if (std::isinf(hi)) {
    g = [&f, lo](double u) {
      const double w = 1.0 - u;
      return f(lo + u / w) / (w * w);
    };
    a = 0.0;
    b = 1.0;
  } else {
    g = f;
  }

  std::priority_queue<Segment> heap;
  Segment first = kronrod15(g, a, b);
  std::size_t evals = 15;
  double total = first.value;
  double error = first.error;
  heap.push(first);

  while (error > tol) {
    if (evals + 30 > max_evaluations) {
      throw QuadratureError("integrate_1d: evaluation budget exhausted (error estimate " +
                                std::to_string(error) + ")",
                            total, error, evals);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw QuadratureError("integrate_1d: interval underflow", total, error, evals);
    }
    const Segment left = kronrod15(g, worst.lo, mid);
    const Segment right = kronrod15(g, mid, worst.hi);
    evals += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (error < 0.0 || heap.size() % 64 == 0) {
      // Resum to shed accumulated rounding in the running totals.
      std::priority_queue<Segment> copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  if (!std::isfinite(total)) {
    throw QuadratureError("integrate_1d: non-finite integrand", total, error, evals);
  }
  return {total, error, evals};
}

}  // namespace lqg
