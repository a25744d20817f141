#include "lqg/excursion.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "lqg/parallel.hpp"

namespace lqg {
namespace detail {

Crossing locate_crossing(const ConeGeometry& g, Point2 a, Point2 b) {
  const double a0 = g.d_zero(a), b0 = g.d_zero(b);
  const double at = g.d_theta(a), bt = g.d_theta(b);
  double f0 = 2.0, ft = 2.0;
  if (b0 <= 0.0) f0 = a0 / (a0 - b0);
  if (bt <= 0.0) ft = at / (at - bt);
  const bool zero_first = f0 <= ft;
  const double f = std::clamp(zero_first ? f0 : ft, 0.0, 1.0);
  const Point2 p{a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])};
  BoundaryPoint bp;
  if (zero_first) {
    bp = {std::abs(p[0]), BoundarySide::angle_zero};
  } else {
    bp = {std::abs(p[0] * g.cos_t + p[1] * g.sin_t), BoundarySide::angle_theta};
  }
  return {f, p, bp};
}

}  // namespace detail

namespace {

using detail::ConeGeometry;
using detail::locate_crossing;

// Harmonic measure h(w) of the segment [lo, hi] of the angle-zero ray, seen from w in C_theta,
// and its log-gradient. Under zeta = w^lambda the segment maps to [A, B] on the real line and
// h = arg((zeta - B)/(zeta - A)) / pi.
class SegmentHarmonic {
 public:
  SegmentHarmonic(double lambda, double lo, double hi)
      : lambda_(lambda), a_(std::pow(lo, lambda)), b_(std::pow(hi, lambda)) {}

  double value(Point2 w) const {
    const auto [zr, zi] = power(w, lambda_);
    return std::atan2((b_ - a_) * zi, zr * zr + zi * zi - (a_ + b_) * zr + a_ * b_) / std::numbers::pi;
  }

  // grad h / h. h = Im G(w) with G(w) = F(w^lambda), F(zeta) = log((zeta-B)/(zeta-A))/pi, so
  // grad h = (Im G', Re G') with G' = lambda w^{lambda-1} (B-A) / (pi (zeta-B)(zeta-A)).
  Point2 log_gradient(Point2 w) const {
    const auto [zr, zi] = power(w, lambda_);
    const auto [pr, pi_] = power(w, lambda_ - 1.0);
    const double h = std::atan2((b_ - a_) * zi, zr * zr + zi * zi - (a_ + b_) * zr + a_ * b_) / std::numbers::pi;
    // (zeta - B)(zeta - A)
    const double qr = (zr - b_) * (zr - a_) - zi * zi;
    const double qi = zi * (2.0 * zr - a_ - b_);
    const double q2 = qr * qr + qi * qi;
    const double scale = lambda_ * (b_ - a_) / std::numbers::pi;
    // numerator w^{lambda-1} / q
    const double nr = (pr * qr + pi_ * qi) / q2;
    const double ni = (pi_ * qr - pr * qi) / q2;
    return {scale * ni / h, scale * nr / h};
  }

 private:
  static std::pair<double, double> power(Point2 w, double p) {
    const double r = std::hypot(w[0], w[1]);
    const double phi = std::atan2(w[1], w[0]);
    const double rp = std::pow(r, p);
    return {rp * std::cos(p * phi), rp * std::sin(p * phi)};
  }

  double lambda_, a_, b_;
};

struct ExcursionGeometry {
  ConeGeometry cone;
  double target_lo, target_hi;  // along the angle-zero ray, in cone coordinates
  Point2 start;                 // cone coordinates
  Point2 shift;                 // (L,R) = shear_inv * w + shift

  ExcursionGeometry(const GammaParams& p, double delta, double c)
      : cone(p.theta),
        target_lo(2.0 * delta * p.unit_boundary_distance()),
        target_hi(3.0 * delta * p.unit_boundary_distance()),
        start(p.shear.apply(delta, c)),
        shift{-delta, 0.0} {}

  Point2 to_lr(const GammaParams& p, Point2 w) const {
    const auto lr = p.shear_inv.apply(w[0], w[1]);
    return {lr[0] + shift[0], lr[1] + shift[1]};
  }
  bool in_target(const detail::Crossing& c) const {
    return c.boundary.side == BoundarySide::angle_zero && c.boundary.dist >= target_lo &&
           c.boundary.dist <= target_hi;
  }
};

void check_excursion_args(double delta, double c, double dt) {
  if (!(delta > 0.0 && delta < c)) throw ParameterError("sample_approx_excursion: require 0 < delta < c");
  if (!(dt > 0.0)) throw ParameterError("sample_approx_excursion: dt must be positive");
}

bool run_rejection_attempt(const GammaParams& params, const ExcursionGeometry& geo, double dt,
                           std::size_t max_steps, bool record, Rng& rng, ExcursionSample& out) {
  const double sq = std::sqrt(dt);
  Point2 w = geo.start;
  out.lr_path.points.clear();
  if (record) out.lr_path.points.push_back(geo.to_lr(params, w));
  for (std::size_t k = 0; k < max_steps; ++k) {
    const Point2 next{w[0] + sq * rng.normal(), w[1] + sq * rng.normal()};
    if (geo.cone.inside(next)) {
      w = next;
      if (record) out.lr_path.points.push_back(geo.to_lr(params, w));
      continue;
    }
    const auto cross = locate_crossing(geo.cone, w, next);
    if (!geo.in_target(cross)) return false;
    out.duration = (static_cast<double>(k) + cross.fraction) * dt;
    Point2 end = geo.to_lr(params, cross.point);
    end[1] = 0.0;
    if (!record) out.lr_path.points.push_back(geo.to_lr(params, geo.start));
    out.lr_path.points.push_back(end);
    return true;
  }
  return false;
}

void run_h_transform(const GammaParams& params, const ExcursionGeometry& geo, double dt, double min_substep,
                     bool record, Rng& rng, ExcursionSample& out) {
  const SegmentHarmonic harmonic(params.lambda_exp, geo.target_lo, geo.target_hi);
  Point2 w = geo.start;
  out.lr_path.points.clear();
  out.lr_path.points.push_back(geo.to_lr(params, w));
  double t = 0.0;
  constexpr int kMaxRedraws = 10'000;
  for (;;) {
    // One recorded step, split so that the drift displacement of each substep stays below a fifth
    // of the distance to the nearest boundary line.
    double remaining = dt;
    while (remaining > 0.0) {
      const Point2 drift = harmonic.log_gradient(w);
      const double dist = std::min(geo.cone.d_zero(w), geo.cone.d_theta(w));
      const double g = std::hypot(drift[0], drift[1]);
      double hs = std::min(remaining, std::max(min_substep, 0.2 * dist / g));
      if (remaining - hs < 1e-3 * hs) hs = remaining;
      const double sq = std::sqrt(hs);
      int redraws = 0;
      for (;;) {
        const Point2 next{w[0] + drift[0] * hs + sq * rng.normal(), w[1] + drift[1] * hs + sq * rng.normal()};
        if (geo.cone.inside(next)) {
          w = next;
          break;
        }
        const auto cross = locate_crossing(geo.cone, w, next);
        if (geo.in_target(cross)) {
          out.duration = t + (dt - remaining) + cross.fraction * hs;
          Point2 end = geo.to_lr(params, cross.point);
          end[1] = 0.0;
          if (!record) out.lr_path.points.resize(1);
          out.lr_path.points.push_back(end);
          return;
        }
        // The conditioned motion never leaves elsewhere; a discretized step that does is redrawn.
        if (++redraws == kMaxRedraws) {
          throw SamplingError("sample_approx_excursion: conditioned step kept leaving the domain near (" +
                                  std::to_string(w[0]) + ", " + std::to_string(w[1]) + ")",
                              1, 0);
        }
      }
      remaining -= hs;
    }
    t += dt;
    if (record) out.lr_path.points.push_back(geo.to_lr(params, w));
  }
}

ExcursionBatch run_batch(const GammaParams& params, double delta, double c, double dt, std::size_t n,
                         std::uint64_t seed, const ExcursionOptions& options, std::uint64_t max_attempts_each,
                         bool parallel) {
  check_excursion_args(delta, c, dt);
  ExcursionBatch batch;
  std::vector<ExcursionSample> samples(n);
  for_each_replica(n, parallel, [&](std::size_t i) {
    samples[i] = sample_approx_excursion(params, delta, c, dt, RngStream{seed, i}, max_attempts_each, options);
  });
  batch.durations.reserve(n);
  for (const auto& s : samples) {
    batch.durations.push_back(s.duration);
    batch.attempts += s.accepted_after;
  }
  if (options.record_path) batch.samples = std::move(samples);
  return batch;
}

}  // namespace

ConeExit run_until_exit(const GammaParams& params, ConePoint start, double dt, RngStream stream,
                        std::size_t max_steps, bool record_path) {
  if (!(start.r > 0.0 && start.phi > 0.0 && start.phi < params.theta)) {
    throw DomainError("run_until_exit: start must lie strictly inside the cone");
  }
  if (!(dt > 0.0)) throw ParameterError("run_until_exit: dt must be positive");
  Rng rng(stream);
  const ConeGeometry cone(params.theta);
  const double sq = std::sqrt(dt);
  ConeExit out;
  out.path.dt = dt;
  Point2 w = start.cartesian();
  out.path.points.push_back(w);
  for (std::size_t k = 0; k < max_steps; ++k) {
    const Point2 next{w[0] + sq * rng.normal(), w[1] + sq * rng.normal()};
    if (cone.inside(next)) {
      w = next;
      if (record_path) out.path.points.push_back(w);
      continue;
    }
    const auto cross = locate_crossing(cone, w, next);
    out.tau = (static_cast<double>(k) + cross.fraction) * dt;
    out.exit_point = cross.boundary;
    if (!record_path) {
      // Start and exit only; keep the time span consistent with tau.
      out.path.dt = static_cast<double>(k + 1) * dt;
    }
    out.path.points.push_back(cross.point);
    return out;
  }
  if (!record_path) out.path.points.push_back(w);
  throw ExitBudgetError("run_until_exit: no exit within " + std::to_string(max_steps) + " steps",
                        std::move(out.path), max_steps);
}

ExcursionSample sample_approx_excursion(const GammaParams& params, double delta, double c, double dt,
                                        RngStream stream, std::uint64_t max_attempts,
                                        const ExcursionOptions& options) {
  check_excursion_args(delta, c, dt);
  Rng rng(stream);
  const ExcursionGeometry geo(params, delta, c);
  ExcursionSample out;
  out.lr_path.dt = dt;

  if (options.method == ExcursionMethod::h_transform) {
    run_h_transform(params, geo, dt, dt * options.min_substep_fraction, options.record_path, rng, out);
    out.accepted_after = 1;
  } else {
    const auto max_steps = static_cast<std::size_t>(std::ceil(options.max_attempt_duration / dt));
    std::uint64_t attempts = 0;
    for (;;) {
      if (attempts == max_attempts) {
        throw SamplingError("sample_approx_excursion: no acceptance in " + std::to_string(attempts) + " attempts",
                            attempts, 0);
      }
      ++attempts;
      if (run_rejection_attempt(params, geo, dt, max_steps, options.record_path, rng, out)) break;
    }
    out.accepted_after = attempts;
  }
  if (!options.record_path) out.lr_path.dt = out.duration;
  return out;
}

double approx_excursion_event_probability(const GammaParams& params, double delta, double c) {
  check_excursion_args(delta, c, 1.0);
  const ExcursionGeometry geo(params, delta, c);
  return SegmentHarmonic(params.lambda_exp, geo.target_lo, geo.target_hi).value(geo.start);
}

ExcursionBatch sample_excursion_batch(const GammaParams& params, double delta, double c, double dt, std::size_t n,
                                      std::uint64_t seed, const ExcursionOptions& options,
                                      std::uint64_t max_attempts_each) {
  return run_batch(params, delta, c, dt, n, seed, options, max_attempts_each, true);
}

ExcursionBatch sample_excursion_batch_serial(const GammaParams& params, double delta, double c, double dt,
                                             std::size_t n, std::uint64_t seed, const ExcursionOptions& options,
                                             std::uint64_t max_attempts_each) {
  return run_batch(params, delta, c, dt, n, seed, options, max_attempts_each, false);
}

ConePoint sample_shimura_entrance(const GammaParams& params, double eps, Rng& rng) {
  if (!(eps > 0.0)) throw ParameterError("sample_shimura_entrance: eps must be positive");
  const double l = params.lambda_exp;
  const double r = std::sqrt(2.0 * eps * rng.gamma(1.0 + 0.5 * l));
  const double phi = std::acos(1.0 - 2.0 * rng.uniform()) / l;
  return {r, phi};
}

ConePoint sample_shimura_entrance(const GammaParams& params, double eps, RngStream stream) {
  Rng rng(stream);
  return sample_shimura_entrance(params, eps, rng);
}

BoundaryPoint sample_exit_point(const GammaParams& params, ConePoint z, Rng& rng) {
  if (!(z.r > 0.0 && z.phi > 0.0 && z.phi < params.theta)) {
    throw DomainError("sample_exit_point: z must lie strictly inside the cone");
  }
  const double l = params.lambda_exp;
  const double zl = std::pow(z.r, l);
  const double x = zl * std::cos(l * z.phi) + zl * std::sin(l * z.phi) * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
  if (x >= 0.0) return {std::pow(x, 1.0 / l), BoundarySide::angle_zero};
  return {std::pow(-x, 1.0 / l), BoundarySide::angle_theta};
}

BoundaryPoint sample_exit_point(const GammaParams& params, ConePoint z, RngStream stream) {
  Rng rng(stream);
  return sample_exit_point(params, z, rng);
}

}  // namespace lqg
