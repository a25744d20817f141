#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lqg/area.hpp"
#include "lqg/error.hpp"
#include "lqg/specfun.hpp"
#include "lqg/stats.hpp"

using namespace lqg;
using doctest::Approx;

TEST_CASE("area law at gamma = sqrt2") {
  const auto law = make_area_law(derive_params(std::numbers::sqrt2));
  CHECK(law.shape == Approx(2.0));
  CHECK(law.rate_b == Approx(0.5));
  CHECK(disk_area_pdf(law, 1.0) == Approx(std::exp(-0.5) / 4));
  CHECK(disk_area_cdf(law, 1.0) == Approx(1.5 * std::exp(-0.5)));
  CHECK_THROWS_AS(disk_area_pdf(law, 0.0), DomainError);
  CHECK_THROWS_AS(disk_area_cdf(law, -1.0), DomainError);
}

TEST_CASE("area density integrates to one and matches the cdf") {
  for (double g : {0.7, 1.3, 1.95}) {
    const auto law = make_area_law(derive_params(g));
    const auto f = [&](double t) { return t > 0 ? disk_area_pdf(law, t) : 0.0; };
    CHECK(integrate_1d(f, 0.0, INFINITY, 1e-11).value == Approx(1.0).epsilon(1e-8));
    for (double t : {0.1, 0.5, 2.0}) CHECK(integrate_1d(f, 0.0, t, 1e-12).value == Approx(disk_area_cdf(law, t)).epsilon(1e-8));
  }
}

TEST_CASE("exact area sampler") {
  const auto law = make_area_law(derive_params(1.1));
  const auto x = sample_disk_areas(law, 20000, 3);
  CHECK(stats::ks_distance(x, [&](double t) { return disk_area_cdf(law, t); }) < 0.015);
  CHECK(sample_disk_areas(law, 10, 3) == std::vector<double>(x.begin(), x.begin() + 10));
}

TEST_CASE("small Monte Carlo comparison and report") {
  const auto p = derive_params(std::numbers::sqrt2);
  ExcursionOptions opt;
  opt.record_path = false;
  const auto r = mc_area_comparison(p, 0.05, 1.0, 1e-3, 600, 11, opt);
  CHECK(r.n == 600);
  CHECK(r.durations.size() == 600);
  CHECK(r.ks < 0.08);
  CHECK(r.expected_mean == Approx(0.5));
  CHECK(r.acceptance_rate == 1.0);
  const auto j = report_to_json(r);
  CHECK(j.contains("ks"));
  CHECK(j.contains("chi2_dof"));
  CHECK_FALSE(j.contains("durations"));
  CHECK(report_to_json(r, true)["durations"].size() == 600);
  CHECK_THROWS_AS(mc_area_comparison(p, 0.05, 1.0, 1e-3, 0, 11, opt), ParameterError);
}
