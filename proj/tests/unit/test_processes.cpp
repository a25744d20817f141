#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lqg/error.hpp"
#include "lqg/processes.hpp"
#include "lqg/specfun.hpp"
#include "lqg/stats.hpp"
#include "support/oracles.hpp"

using namespace lqg;
using doctest::Approx;

namespace {

// Average slope of v from index `from` to the end.
double end_slope(const std::vector<double>& v, std::size_t from, double dt) {
  const double span = static_cast<double>(v.size() - 1 - from) * dt;
  return (v.back() - v[from]) / span;
}

double mean_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double s = 0;
  for (std::size_t k = lo; k < hi; ++k) s += v[k];
  return s / static_cast<double>(hi - lo);
}

}  // namespace

TEST_CASE("quadratic variation rate is 2 for every kind") {
  const auto p = derive_params(1.5);
  for (double dt : {1e-3, 1e-4}) {
    const std::size_t n = static_cast<std::size_t>(20.0 / dt);
    // relative sd of the QV estimate is sqrt(2/N)
    const double tol = 6 * std::sqrt(2.0 / (2.0 * static_cast<double>(n)));
    CHECK(sample_thick_wedge_average(p, 1.0, dt, n, n, {50, 1}).quadratic_variation_rate() == Approx(2).epsilon(tol));
    CHECK(sample_disk_conditioned_average(p, 1.0, dt, n, {50, 2}).quadratic_variation_rate() == Approx(2).epsilon(tol));
  }
  // One unit-length excursion has far fewer steps; pool a few.
  double qv = 0;
  for (std::uint64_t i = 0; i < 10; ++i)
    qv += sample_bessel_excursion_average(p, bead_dimension(p, 2.25), 1e-3, {51, i}).quadratic_variation_rate();
  CHECK(qv / 10 == Approx(2).epsilon(0.05));
  const auto d = derive_params(1.9);
  qv = 0;
  for (std::uint64_t i = 0; i < 10; ++i)
    qv += sample_bessel_excursion_average(d, disk_bessel_dimension(d), 1e-3, {52, i}, FieldKind::disk_bessel)
              .quadratic_variation_rate();
  CHECK(qv / 10 == Approx(2).epsilon(0.05));
}

TEST_CASE("wedge drifts") {
  const auto p = derive_params(1.2);
  const double dt = 0.01;
  const std::size_t n = 100000;  // T = 1000, slope sd sqrt(2/T)
  const double se = std::sqrt(2.0 / (static_cast<double>(n) * dt));
  std::vector<double> alphas{p.gamma, p.q_coef - 0.1};
  if (1.5 * p.gamma < p.q_coef) alphas.push_back(1.5 * p.gamma);
  std::uint64_t i = 0;
  for (double a : alphas) {
    const auto w = sample_thick_wedge_average(p, a, dt, n, n, {53, i++});
    REQUIRE(w.values.size() == 2 * n + 1);
    CHECK(w.origin_time == Approx(-static_cast<double>(n) * dt));
    CHECK(w.values[n] == 0.0);
    const double fwd = end_slope(w.values, n, dt);
    CHECK(std::abs(fwd - (a - p.q_coef)) < 3 * se);
    // backward branch, read towards -infinity: drift Q - alpha, strictly positive
    const double bwd = (w.values.front() - w.values[n]) / (static_cast<double>(n) * dt);
    CHECK(std::abs(bwd - (p.q_coef - a)) < 3 * se);
    CHECK(std::all_of(w.values.begin(), w.values.begin() + n, [](double v) { return v > 0; }));
  }
  CHECK_THROWS_AS(sample_thick_wedge_average(p, p.q_coef, dt, 10, 10, {1, 1}), ParameterError);
}

TEST_CASE("disk branches") {
  const auto p = derive_params(std::numbers::sqrt2);
  const double beta = 1.0;
  const std::size_t n = 5000;
  const auto d = sample_disk_conditioned_average(p, beta, 1e-3, n, {54, 0});
  CHECK(d.values[n] == -beta);
  CHECK(d.time(n) == Approx(0.0));
  CHECK(std::all_of(d.values.begin(), d.values.begin() + n, [&](double v) { return v < -beta; }));
  CHECK(d.extra == std::vector<double>{beta});
  CHECK_THROWS_AS(sample_disk_conditioned_average(p, 0.0, 1e-3, n, {54, 0}), ParameterError);
}

TEST_CASE("conditioned branch matches killed-and-kept oracle") {
  const double m = 0.8, x0 = 0.2, dt = 0.01;
  Rng orng({55, 0});
  const auto oracle = testing::conditioned_rejection_oracle(m, x0, dt, 10.0, 1.0, 2000, orng);
  std::vector<double> ours;
  Rng rng({55, 1});
  for (int i = 0; i < 2000; ++i) ours.push_back(sample_conditioned_drifted_bm(m, x0, dt, 100, rng)[100]);
  CHECK(stats::ks_two_sample(oracle, ours) < 0.06);
  CHECK_THROWS_AS(sample_conditioned_drifted_bm(0.0, 1.0, dt, 10, rng), ParameterError);
  CHECK_THROWS_AS(sample_conditioned_drifted_bm(1.0, -1.0, dt, 10, rng), ParameterError);
}

TEST_CASE("dimensions") {
  CHECK(bead_dimension(derive_params(1.5), 2.25) == Approx(1.7778).epsilon(1e-4));
  CHECK(disk_bessel_dimension(derive_params(std::numbers::sqrt2)) == Approx(1.0));
  CHECK(disk_bessel_dimension(derive_params(1.0)) < 0.0);
}

TEST_CASE("Bessel bridge marginal is chi-square") {
  // the first point sits exactly at t_min, where r^2/(t(1-t)) ~ chi2 with dim degrees of freedom
  const double dim = 2.6, t = 0.2;
  BesselBridgeOptions opt;
  opt.t_min = t;
  opt.max_log_step = 0.5;
  Rng rng({56, 0});
  std::vector<double> s(5000);
  for (auto& x : s) {
    const auto b = sample_bessel_bridge(dim, rng, opt);
    CHECK(b.front()[0] == t);
    x = b.front()[1] * b.front()[1] / (t * (1 - t));
  }
  CHECK(stats::ks_distance(s, [&](double x) { return regularized_gamma_p(0.5 * dim, 0.5 * x); }) < 0.025);
}

TEST_CASE("Bessel excursion shape") {
  const auto p = derive_params(1.5);
  const auto e = sample_bessel_excursion_average(p, bead_dimension(p, 2.5), 1e-3, {57, 0});
  const std::size_t n = e.values.size();
  REQUIRE(n > 100);
  const double ends = 0.5 * (mean_of(e.values, 0, n / 20) + mean_of(e.values, n - n / 20, n));
  CHECK(ends < mean_of(e.values, n / 4, 3 * n / 4));
  CHECK(e.origin_time <= 0.0);
  const auto top = static_cast<std::size_t>(std::llround(-e.origin_time / e.dt));
  CHECK(e.values[top] == *std::max_element(e.values.begin(), e.values.end()));
}

TEST_CASE("Bessel excursion argument checks") {
  const auto p = derive_params(1.0);
  CHECK_THROWS_AS(sample_bessel_excursion_average(p, disk_bessel_dimension(p), 1e-3, {1, 1}), ParameterError);
  CHECK_THROWS_AS(sample_bessel_excursion_average(p, 2.0, 1e-3, {1, 1}), ParameterError);
  CHECK_THROWS_AS(sample_bessel_excursion_average(p, 1.0, 1e-3, {1, 1}, FieldKind::thick_wedge_fwd), ParameterError);
  Rng rng({1, 1});
  CHECK_THROWS_AS(sample_bessel_bridge(0.0, rng), ParameterError);
}
