#include <doctest.h>

#include <sstream>

#include "lqg/error.hpp"
#include "lqg/path.hpp"

using namespace lqg;

TEST_CASE("csv round trip is exact") {
  Path2D p;
  p.dt = 0.1;
  p.origin_time = -0.2;
  p.points = {{0.1, 1.0 / 3.0}, {-2.5, 1e-17}, {3.0, 4.0}};
  const std::string csv = path_to_csv(p);
  CHECK(csv.rfind("t,L,R\n", 0) == 0);
  std::istringstream is(csv);
  const auto q = read_path_csv(is);
  CHECK(q.points == p.points);
  CHECK(q.origin_time == p.origin_time);
  CHECK(q.dt == doctest::Approx(p.dt));
}

TEST_CASE("csv reader stops at the first blank line") {
  std::istringstream is("t,L,R\n0,0,1\n0.5,1,2\n\nt,L,R\n0,9,9\n");
  const auto p = read_path_csv(is);
  CHECK(p.size() == 2);
  CHECK(p.duration() == doctest::Approx(0.5));
}

TEST_CASE("malformed csv") {
  std::istringstream no_header("0,0,1\n");
  CHECK_THROWS_AS(read_path_csv(no_header), InputError);
  std::istringstream bad_row("t,L,R\n0,zero,1\n");
  CHECK_THROWS_AS(read_path_csv(bad_row), InputError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_path_csv(empty), InputError);
}

TEST_CASE("json round trip") {
  Path2D p;
  p.dt = 0.25;
  p.points = {{1, 2}, {3, 4}};
  nlohmann::json j = p;
  CHECK(j.at("points").size() == 2);
  const auto q = j.get<Path2D>();
  CHECK(q.points == p.points);
  CHECK(q.dt == p.dt);
  Path2D bad;
  bad.dt = -1;
  CHECK_THROWS_AS(bad.validate(), InputError);
}
