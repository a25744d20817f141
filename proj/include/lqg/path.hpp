#pragma once

#include <array>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace lqg {

using Point2 = std::array<double, 2>;

/// Uniformly time-stepped planar path; index k sits at time origin_time + k*dt.
struct Path2D {
  double dt = 1.0;
  double origin_time = 0.0;
  std::vector<Point2> points;

  std::size_t size() const { return points.size(); }
  double time(std::size_t k) const { return origin_time + static_cast<double>(k) * dt; }
  /// Time spanned by the stored points, (size-1)*dt.
  double duration() const { return points.empty() ? 0.0 : static_cast<double>(points.size() - 1) * dt; }
  /// Throws InputError when empty or dt is not positive.
  void validate() const;
};

/// CSV with header `t,L,R`, 17 significant digits.
void write_path_csv(std::ostream& os, const Path2D& p);
std::string path_to_csv(const Path2D& p);
/// Reads the first block of a `t,L,R` CSV (stops at a blank line). dt is taken from the first two rows.
Path2D read_path_csv(std::istream& is);

void to_json(nlohmann::json& j, const Path2D& p);
void from_json(const nlohmann::json& j, Path2D& p);

}  // namespace lqg
