#include "lqg/area.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "lqg/error.hpp"
#include "lqg/specfun.hpp"
#include "lqg/stats.hpp"

namespace lqg {

AreaLaw make_area_law(const GammaParams& params) {
  AreaLaw law;
  law.params = params;
  const double as = params.a_const * std::sin(params.theta);
  const double l = params.lambda_exp;
  law.rate_b = 1.0 / (2.0 * as * as);
  law.shape = l;
  law.norm_c = std::exp(l * std::numbers::ln2 + std::lgamma(l) + 2.0 * l * std::log(as));
  return law;
}

double disk_area_pdf(const AreaLaw& law, double t) {
  if (!(t > 0.0)) throw DomainError("disk_area_pdf: t must be positive");
  return std::exp(-(1.0 + law.shape) * std::log(t) - law.rate_b / t - std::log(law.norm_c));
}

double disk_area_cdf(const AreaLaw& law, double t) {
  if (!(t > 0.0)) throw DomainError("disk_area_cdf: t must be positive");
  if (std::isinf(t)) return 1.0;
  return regularized_gamma_q(law.shape, law.rate_b / t);
}

double sample_disk_area(const AreaLaw& law, Rng& rng) { return law.rate_b / rng.gamma(law.shape); }

double sample_disk_area(const AreaLaw& law, RngStream stream) {
  Rng rng(stream);
  return sample_disk_area(law, rng);
}

std::vector<double> sample_disk_areas(const AreaLaw& law, std::size_t n, std::uint64_t seed) {
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    out[i] = sample_disk_area(law, RngStream{seed, static_cast<std::uint64_t>(i)});
  }
  return out;
}

AreaReport mc_area_comparison(const GammaParams& params, double delta, double c, double dt, std::size_t n,
                              std::uint64_t seed, const ExcursionOptions& options) {
  if (n == 0) throw ParameterError("mc_area_comparison: n must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  ExcursionOptions opts = options;
  opts.record_path = false;
  const ExcursionBatch batch = sample_excursion_batch(params, delta, c, dt, n, seed, opts);
  const AreaLaw law = make_area_law(params);
  const auto cdf = [&law](double t) { return t > 0.0 ? disk_area_cdf(law, t) : 0.0; };

  AreaReport r;
  r.n = n;
  r.gamma = params.gamma;
  r.a_const = params.a_const;
  r.delta = delta;
  r.c = c;
  r.dt = dt;
  r.method = options.method == ExcursionMethod::h_transform ? "h_transform" : "rejection";
  r.ks = stats::ks_distance(batch.durations, cdf);
  r.ks_p_value = stats::kolmogorov_tail(std::sqrt(static_cast<double>(n)) * r.ks);
  const int bins = static_cast<int>(std::clamp<std::size_t>(n / 50, 2, 50));
  const auto chi = stats::chi_square_equiprobable(batch.durations, cdf, bins, 1e-12, 1e12);
  r.chi2 = chi.statistic;
  r.chi2_dof = chi.dof;
  r.mean_duration = stats::mean(batch.durations);
  r.expected_mean = law.shape > 1.0 ? law.rate_b / (law.shape - 1.0) : std::numeric_limits<double>::infinity();
  r.acceptance_rate = batch.acceptance_rate();
  r.event_probability = approx_excursion_event_probability(params, delta, c);
  r.attempts = batch.attempts;
  r.durations = batch.durations;
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::ordered_json report_to_json(const AreaReport& r, bool include_durations) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["gamma"] = r.gamma;
  j["a_const"] = r.a_const;
  j["delta"] = r.delta;
  j["c"] = r.c;
  j["dt"] = r.dt;
  j["method"] = r.method;
  j["ks"] = r.ks;
  j["ks_p_value"] = r.ks_p_value;
  j["chi2"] = r.chi2;
  j["chi2_dof"] = r.chi2_dof;
  j["mean_duration"] = r.mean_duration;
  if (std::isfinite(r.expected_mean)) {
    j["expected_mean"] = r.expected_mean;
  } else {
    j["expected_mean"] = nullptr;
  }
  j["acceptance_rate"] = r.acceptance_rate;
  j["event_probability"] = r.event_probability;
  j["attempts"] = r.attempts;
  j["runtime_s"] = r.runtime_s;
  if (include_durations) j["durations"] = r.durations;
  return j;
}

}  // namespace lqg
