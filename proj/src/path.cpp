#include "lqg/path.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lqg/error.hpp"

namespace lqg {

void Path2D::validate() const {
  if (points.empty()) throw InputError("path has no points");
  if (!(dt > 0.0)) throw InputError("path dt must be positive");
}

void write_path_csv(std::ostream& os, const Path2D& p) {
  os << "t,L,R\n";
  char buf[96];
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.time(k), p.points[k][0], p.points[k][1]);
    os << buf;
  }
}

std::string path_to_csv(const Path2D& p) {
  std::ostringstream ss;
  write_path_csv(ss, p);
  return ss.str();
}

Path2D read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty path csv");
  if (line.rfind("t,", 0) != 0) throw InputError("path csv must start with header `t,L,R`");

  std::vector<double> times;
  Path2D p;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") break;
    double t, l, r;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &l, &r) != 3) {
      throw InputError("malformed path csv row: " + line);
    }
    times.push_back(t);
    p.points.push_back({l, r});
  }
  if (p.points.empty()) throw InputError("path csv has no rows");
  p.origin_time = times.front();
  p.dt = times.size() > 1 ? times[1] - times[0] : 1.0;
  p.validate();
  return p;
}

void to_json(nlohmann::json& j, const Path2D& p) {
  j = nlohmann::json{{"dt", p.dt}, {"origin_time", p.origin_time}, {"points", p.points}};
}

void from_json(const nlohmann::json& j, Path2D& p) {
  p.dt = j.at("dt").get<double>();
  p.origin_time = j.value("origin_time", 0.0);
  p.points = j.at("points").get<std::vector<Point2>>();
  p.validate();
}

}  // namespace lqg
