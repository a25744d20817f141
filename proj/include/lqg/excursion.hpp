#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "lqg/cone.hpp"
#include "lqg/error.hpp"
#include "lqg/params.hpp"
#include "lqg/path.hpp"
#include "lqg/rng.hpp"

namespace lqg {

/// Cone path (cartesian cone coordinates) stopped at its first exit from C_theta.
struct ConeExit {
  Path2D path;  // last point is the interpolated exit point
  double tau = 0;
  BoundaryPoint exit_point;
};

/// Step budget exhausted before the path left the cone; carries the partial path.
class ExitBudgetError : public SamplingError {
 public:
  ExitBudgetError(const std::string& what, Path2D partial, std::uint64_t steps)
      : SamplingError(what, steps, 0), partial_(std::move(partial)) {}
  const Path2D& partial() const noexcept { return partial_; }

 private:
  Path2D partial_;
};

/// Standard planar Brownian motion from `start` until it leaves C_theta.
///
/// The crossing is located by linear interpolation inside the last step. With record_path=false only
/// the start and exit points are stored.
ConeExit run_until_exit(const GammaParams& params, ConePoint start, double dt, RngStream stream,
                        std::size_t max_steps, bool record_path = true);

/// (L,R) excursion approximating the boundary-to-boundary quadrant excursion from (0,1) to (0,0).
struct ExcursionSample {
  Path2D lr_path;  // starts at (0,c); last point is the interpolated exit point on R = 0
  double duration = 0;
  std::uint64_t accepted_after = 0;
};

enum class ExcursionMethod {
  /// Exact Doob transform by the harmonic measure of the target segment; every attempt succeeds.
  h_transform,
  /// Literal rejection: run the unconditioned motion and keep exits through the target segment.
  rejection,
};

struct ExcursionOptions {
  ExcursionMethod method = ExcursionMethod::h_transform;
  bool record_path = true;
  /// Rejection mode: attempts still inside the domain after this long are rejected.
  double max_attempt_duration = 50.0;
  /// h-transform mode: smallest Euler substep, as a fraction of dt. Substeps shrink near the
  /// boundary so the drift displacement stays below a fifth of the distance to it.
  double min_substep_fraction = 1e-9;
};

/// Correlated (L,R) motion from (0,c) run until it leaves (R_+ - delta) x R_+, conditioned to leave
/// through R = 0 with L in [delta, 2 delta]. Throws ParameterError unless 0 < delta < c, and
/// SamplingError when `max_attempts` rejection attempts fail.
ExcursionSample sample_approx_excursion(const GammaParams& params, double delta, double c, double dt,
                                        RngStream stream, std::uint64_t max_attempts = 10'000'000,
                                        const ExcursionOptions& options = {});

/// Probability that the unconditioned motion of sample_approx_excursion meets its acceptance event.
double approx_excursion_event_probability(const GammaParams& params, double delta, double c);

struct ExcursionBatch {
  std::vector<double> durations;
  std::vector<ExcursionSample> samples;  // empty unless options.record_path
  std::uint64_t attempts = 0;

  double acceptance_rate() const {
    return attempts == 0 ? 0.0 : static_cast<double>(durations.size()) / static_cast<double>(attempts);
  }
};

/// n independent approximate excursions; replica i uses stream {seed, i}. OpenMP-parallel.
ExcursionBatch sample_excursion_batch(const GammaParams& params, double delta, double c, double dt, std::size_t n,
                                      std::uint64_t seed, const ExcursionOptions& options = {},
                                      std::uint64_t max_attempts_each = 10'000'000);
/// Single-threaded reference for sample_excursion_batch; identical output.
ExcursionBatch sample_excursion_batch_serial(const GammaParams& params, double delta, double c, double dt,
                                             std::size_t n, std::uint64_t seed, const ExcursionOptions& options = {},
                                             std::uint64_t max_attempts_each = 10'000'000);

/// Exact draw of Z_eps under the vertex-started law conditioned on {tau > eps}.
ConePoint sample_shimura_entrance(const GammaParams& params, double eps, Rng& rng);
ConePoint sample_shimura_entrance(const GammaParams& params, double eps, RngStream stream);

/// Exact draw of the exit point of Brownian motion from interior z, through the map w -> w^lambda.
BoundaryPoint sample_exit_point(const GammaParams& params, ConePoint z, Rng& rng);
BoundaryPoint sample_exit_point(const GammaParams& params, ConePoint z, RngStream stream);

namespace detail {

/// Signed distances to the angle-zero and angle-theta lines; both positive strictly inside.
struct ConeGeometry {
  double sin_t, cos_t;
  explicit ConeGeometry(double theta) : sin_t(std::sin(theta)), cos_t(std::cos(theta)) {}
  double d_zero(Point2 w) const { return w[1]; }
  double d_theta(Point2 w) const { return w[0] * sin_t - w[1] * cos_t; }
  bool inside(Point2 w) const { return d_zero(w) > 0.0 && d_theta(w) > 0.0; }
};

struct Crossing {
  double fraction;  // position of the crossing inside the step, in [0,1]
  Point2 point;
  BoundaryPoint boundary;
};

/// First boundary crossing on the segment a -> b (a inside, b outside).
Crossing locate_crossing(const ConeGeometry& g, Point2 a, Point2 b);

}  // namespace detail

}  // namespace lqg
