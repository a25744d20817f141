#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <vector>

#include "lqg/excursion.hpp"
#include "lqg/params.hpp"
#include "lqg/rng.hpp"

namespace lqg {

/// Law of the area of a unit-boundary-length quantum disk (equivalently, of the duration of the
/// sheared boundary-to-boundary quadrant excursion): inverse gamma with shape lambda and rate
/// 1/(2 (a sin theta)^2).
struct AreaLaw {
  GammaParams params;
  double rate_b = 0;
  double shape = 0;
  double norm_c = 0;  // 2^lambda Gamma(lambda) (a sin theta)^{2 lambda}
};

AreaLaw make_area_law(const GammaParams& params);

double disk_area_pdf(const AreaLaw& law, double t);
/// P(area <= t) = Q(lambda, b/t).
double disk_area_cdf(const AreaLaw& law, double t);
/// b / G with G ~ Gamma(lambda, 1).
double sample_disk_area(const AreaLaw& law, Rng& rng);
double sample_disk_area(const AreaLaw& law, RngStream stream);

/// n exact area draws, draw i from stream {seed, i}.
std::vector<double> sample_disk_areas(const AreaLaw& law, std::size_t n, std::uint64_t seed);

struct AreaReport {
  std::size_t n = 0;
  double gamma = 0;
  double a_const = 0;
  double delta = 0;
  double c = 0;
  double dt = 0;
  std::string method;
  double ks = 0;
  double ks_p_value = 0;
  double chi2 = 0;
  int chi2_dof = 0;
  double mean_duration = 0;
  double expected_mean = 0;  // b/(lambda-1); +inf when lambda <= 1
  double acceptance_rate = 0;
  double event_probability = 0;
  std::uint64_t attempts = 0;
  double runtime_s = 0;
  std::vector<double> durations;
};

/// Runs n approximate excursions and compares their durations with the area law.
/// Throws ParameterError when n == 0.
AreaReport mc_area_comparison(const GammaParams& params, double delta, double c, double dt, std::size_t n,
                              std::uint64_t seed, const ExcursionOptions& options = {});

/// Fixed field order. `include_durations` adds the raw durations array.
nlohmann::ordered_json report_to_json(const AreaReport& r, bool include_durations = false);

}  // namespace lqg
