#include "lqg/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lqg/error.hpp"

namespace lqg {

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::thick_wedge_fwd: return "thick_wedge_fwd";
    case FieldKind::thick_wedge_bwd: return "thick_wedge_bwd";
    case FieldKind::disk_conditioned: return "disk_conditioned";
    case FieldKind::bead_bessel: return "bead_bessel";
    case FieldKind::disk_bessel: return "disk_bessel";
  }
  return "unknown";
}

double FieldAverageProcess::quadratic_variation_rate() const {
  if (values.size() < 2) return 0.0;
  double qv = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double d = values[k] - values[k - 1];
    qv += d * d;
  }
  return qv / (static_cast<double>(values.size() - 1) * dt);
}

std::vector<double> sample_conditioned_drifted_bm(double m, double x0, double dt, std::size_t n, Rng& rng) {
  if (!(m > 0.0)) throw ParameterError("sample_conditioned_drifted_bm: drift must be positive");
  if (!(x0 >= 0.0)) throw ParameterError("sample_conditioned_drifted_bm: start must be >= 0");
  if (!(dt > 0.0)) throw ParameterError("sample_conditioned_drifted_bm: dt must be positive");
  const double nu = m / std::numbers::sqrt2;
  const double r0 = x0 / std::numbers::sqrt2;
  // Starting direction with density proportional to exp(nu * r0 * cos) on the sphere.
  double z[3] = {0.0, 0.0, 0.0};
  if (r0 > 0.0) {
    const double kappa = nu * r0;
    const double u = rng.uniform();
    const double w = std::clamp(1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * kappa)) / kappa, -1.0, 1.0);
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
    z[0] = r0 * w;
    z[1] = r0 * s * std::cos(phi);
    z[2] = r0 * s * std::sin(phi);
  }
  std::vector<double> out;
  out.reserve(n + 1);
  out.push_back(x0);
  const double sq = std::sqrt(dt);
  for (std::size_t k = 0; k < n; ++k) {
    z[0] += nu * dt + sq * rng.normal();
    z[1] += sq * rng.normal();
    z[2] += sq * rng.normal();
    out.push_back(std::numbers::sqrt2 * std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]));
  }
  return out;
}

namespace {

void check_grid(const char* who, double dt) {
  if (!(dt > 0.0)) throw ParameterError(std::string(who) + ": dt must be positive");
}

std::vector<double> drifted_bm(double start, double drift, double dt, std::size_t n, Rng& rng) {
  std::vector<double> out;
  out.reserve(n + 1);
  out.push_back(start);
  const double sq = std::sqrt(2.0 * dt);
  double x = start;
  for (std::size_t k = 0; k < n; ++k) {
    x += drift * dt + sq * rng.normal();
    out.push_back(x);
  }
  return out;
}

// Joins a backward branch (element k at time -k*dt, element 0 shared) with a forward one.
FieldAverageProcess two_sided(const std::vector<double>& bwd, const std::vector<double>& fwd, double dt) {
  FieldAverageProcess p;
  p.dt = dt;
  p.origin_time = -static_cast<double>(bwd.size() - 1) * dt;
  p.values.reserve(bwd.size() + fwd.size() - 1);
  for (std::size_t k = bwd.size(); k-- > 1;) p.values.push_back(bwd[k]);
  p.values.insert(p.values.end(), fwd.begin(), fwd.end());
  return p;
}

}  // namespace

FieldAverageProcess sample_thick_wedge_average(const GammaParams& params, double alpha, double dt, std::size_t n_fwd,
                                               std::size_t n_bwd, RngStream stream) {
  check_grid("sample_thick_wedge_average", dt);
  if (!(alpha < params.q_coef)) throw ParameterError("sample_thick_wedge_average: alpha must be < Q");
  const double m = params.q_coef - alpha;
  Rng fwd_rng(stream.substream(0));
  Rng bwd_rng(stream.substream(1));
  const auto fwd = drifted_bm(0.0, -m, dt, n_fwd, fwd_rng);
  const auto bwd = sample_conditioned_drifted_bm(m, 0.0, dt, n_bwd, bwd_rng);
  auto p = two_sided(bwd, fwd, dt);
  p.kind = n_bwd > 0 ? FieldKind::thick_wedge_bwd : FieldKind::thick_wedge_fwd;
  p.params = params;
  p.extra = {alpha};
  return p;
}

FieldAverageProcess sample_disk_conditioned_average(const GammaParams& params, double beta, double dt,
                                                    std::size_t n_each, RngStream stream) {
  check_grid("sample_disk_conditioned_average", dt);
  if (!(beta > 0.0)) throw ParameterError("sample_disk_conditioned_average: beta must be positive");
  const double m = params.q_coef - params.gamma;
  Rng fwd_rng(stream.substream(0));
  Rng bwd_rng(stream.substream(1));
  const auto fwd = drifted_bm(-beta, -m, dt, n_each, fwd_rng);
  auto bwd = sample_conditioned_drifted_bm(m, 0.0, dt, n_each, bwd_rng);
  for (auto& v : bwd) v = -beta - v;
  bwd[0] = -beta;
  auto p = two_sided(bwd, fwd, dt);
  p.kind = FieldKind::disk_conditioned;
  p.params = params;
  p.extra = {beta};
  return p;
}

double bead_dimension(const GammaParams& params, double alpha) {
  return 2.0 + 2.0 * (params.q_coef - alpha) / params.gamma;
}

double disk_bessel_dimension(const GammaParams& params) { return 3.0 - 4.0 / (params.gamma * params.gamma); }

std::vector<std::array<double, 2>> sample_bessel_bridge(double dim, Rng& rng, const BesselBridgeOptions& options) {
  if (!(dim > 0.0)) throw ParameterError("sample_bessel_bridge: dimension must be positive");
  if (!(options.t_min > 0.0 && options.t_min < 0.25)) throw ParameterError("sample_bessel_bridge: t_min out of range");
  if (!(options.max_log_step > 0.0)) throw ParameterError("sample_bessel_bridge: max_log_step must be positive");
  // Squared bridge Y(t) = (1-t)^2 X(t/(1-t)) with X a squared Bessel process from 0, whose
  // transitions are Poisson mixtures of gammas.
  const double half_dim = 0.5 * dim;
  const double c2 = options.max_log_step * options.max_log_step;
  const double t_end = 1.0 - options.t_min;
  std::vector<std::array<double, 2>> out;
  double t = options.t_min;
  double u = t / (1.0 - t);
  double x = 2.0 * u * rng.gamma(half_dim);
  out.push_back({t, (1.0 - t) * std::sqrt(x)});
  while (t < t_end) {
    const double y = (1.0 - t) * (1.0 - t) * x;
    double t_next = std::min(t_end, t + std::max(c2 * y, 1e-3 * c2 * t * (1.0 - t)));
    if (t_end - t_next < 1e-12) t_next = t_end;
    const double u_next = t_next / (1.0 - t_next);
    const double du = u_next - u;
    const auto n = rng.poisson(x / (2.0 * du));
    x = 2.0 * du * rng.gamma(half_dim + static_cast<double>(n));
    t = t_next;
    u = u_next;
    out.push_back({t, (1.0 - t) * std::sqrt(x)});
  }
  return out;
}

FieldAverageProcess sample_bessel_excursion_average(const GammaParams& params, double dimension, double dt,
                                                    RngStream stream, FieldKind kind,
                                                    const BesselBridgeOptions& options) {
  check_grid("sample_bessel_excursion_average", dt);
  if (kind != FieldKind::bead_bessel && kind != FieldKind::disk_bessel) {
    throw ParameterError("sample_bessel_excursion_average: kind must be bead_bessel or disk_bessel");
  }
  if (!(dimension > 0.0)) {
    throw ParameterError("sample_bessel_excursion_average: dimension " + std::to_string(dimension) +
                         " <= 0 is unsupported (the disk dimension 3-4/gamma^2 is <= 0 for gamma^2 <= 4/3; "
                         "sampling that excursion measure is out of scope)");
  }
  if (!(dimension < 2.0)) throw ParameterError("sample_bessel_excursion_average: dimension must be < 2");
  Rng rng(stream);
  // Fine enough that each step adds about dt/32 of reparametrized time.
  BesselBridgeOptions opt = options;
  opt.max_log_step = std::min(options.max_log_step, params.gamma * std::sqrt(dt / 64.0));
  const auto bridge = sample_bessel_bridge(4.0 - dimension, rng, opt);

  const double scale = 2.0 / params.gamma;
  std::vector<double> s(bridge.size()), v(bridge.size());
  for (std::size_t k = 0; k < bridge.size(); ++k) {
    v[k] = scale * std::log(bridge[k][1]);
    if (k > 0) {
      const double d = v[k] - v[k - 1];
      s[k] = s[k - 1] + 0.5 * d * d;
    }
  }
  const auto n_out = static_cast<std::size_t>(std::floor(s.back() / dt)) + 1;
  FieldAverageProcess p;
  p.dt = dt;
  p.values.reserve(n_out);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n_out; ++k) {
    const double target = static_cast<double>(k) * dt;
    while (j + 2 < s.size() && s[j + 1] < target) ++j;
    // Nearest fine point rather than interpolation: interpolating inside a step would shave off
    // part of its squared increment.
    p.values.push_back(target - s[j] <= s[j + 1] - target ? v[j] : v[j + 1]);
  }
  const auto top = std::max_element(p.values.begin(), p.values.end()) - p.values.begin();
  p.origin_time = -static_cast<double>(top) * dt;
  p.kind = kind;
  p.params = params;
  p.extra = {dimension};
  return p;
}

}  // namespace lqg
