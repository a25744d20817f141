#pragma once

#include <array>
#include <string>
#include <vector>

#include "lqg/params.hpp"
#include "lqg/rng.hpp"

namespace lqg {

enum class FieldKind { thick_wedge_fwd, thick_wedge_bwd, disk_conditioned, bead_bessel, disk_bessel };

std::string to_string(FieldKind k);

/// One-dimensional field-average path on a uniform time grid, value k at origin_time + k*dt.
struct FieldAverageProcess {
  double dt = 0;
  double origin_time = 0;
  std::vector<double> values;
  FieldKind kind = FieldKind::thick_wedge_fwd;
  GammaParams params;
  std::vector<double> extra;  // alpha for wedges, beta for disks, the Bessel dimension for beads

  double time(std::size_t k) const { return origin_time + static_cast<double>(k) * dt; }
  /// Sum of squared increments divided by the time span (about 2 for every kind).
  double quadratic_variation_rate() const;
};

/// Variance-2 Brownian motion with drift m > 0 started at x0 >= 0 and conditioned never to hit 0,
/// at times dt, 2dt, ..., n*dt (x0 is element 0 of the result).
///
/// The conditioned drift is m*coth(m*x/2). The process is simulated exactly as sqrt(2) times the
/// norm of a three-dimensional Brownian motion with drift of size m/sqrt(2), whose starting
/// direction is tilted so that the norm is Markov.
std::vector<double> sample_conditioned_drifted_bm(double m, double x0, double dt, std::size_t n, Rng& rng);

/// Thick wedge: t >= 0 is variance-2 BM with drift alpha-Q; t < 0 carries the independent branch
/// with drift Q-alpha conditioned positive. Requires alpha < Q.
FieldAverageProcess sample_thick_wedge_average(const GammaParams& params, double alpha, double dt, std::size_t n_fwd,
                                               std::size_t n_bwd, RngStream stream);

/// Quantum disk with sup >= -beta: both branches start at -beta and drift by gamma-Q; the t < 0
/// branch stays strictly below -beta.
FieldAverageProcess sample_disk_conditioned_average(const GammaParams& params, double beta, double dt,
                                                    std::size_t n_each, RngStream stream);

/// 2 + 2(Q-alpha)/gamma.
double bead_dimension(const GammaParams& params, double alpha);
/// 3 - 4/gamma^2.
double disk_bessel_dimension(const GammaParams& params);

struct BesselBridgeOptions {
  double t_min = 1e-6;          // the bridge is sampled on [t_min, 1-t_min]
  double max_log_step = 0.05;   // bound on the typical change of log r per step
};

/// Bessel bridge of dimension d > 0 from 0 to 0 on [0,1], sampled exactly (via squared Bessel
/// transitions) at adaptively chosen times. Returns (t, r) pairs, endpoints excluded.
std::vector<std::array<double, 2>> sample_bessel_bridge(double dim, Rng& rng, const BesselBridgeOptions& options = {});

/// (2/gamma) log of a unit-duration Bessel excursion of the given dimension in (0,2), time-changed
/// to quadratic variation 2 ds and put on a uniform grid of step dt with time 0 at the maximum.
/// kind must be bead_bessel or disk_bessel. Dimension <= 0 throws ParameterError.
FieldAverageProcess sample_bessel_excursion_average(const GammaParams& params, double dimension, double dt,
                                                    RngStream stream, FieldKind kind = FieldKind::bead_bessel,
                                                    const BesselBridgeOptions& options = {});

}  // namespace lqg
