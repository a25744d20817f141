#include "lqg/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "lqg/area.hpp"
#include "lqg/cone.hpp"
#include "lqg/error.hpp"
#include "lqg/specfun.hpp"

namespace lqg {

namespace {

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Check make(std::string name, double value, double tol, std::string detail) {
  return {std::move(name), std::isfinite(value) && value < tol, value, tol, std::move(detail)};
}

// Runs fn and turns a quadrature failure into a failed check.
template <class Fn>
Check guarded(const std::string& name, double tol, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, std::numeric_limits<double>::infinity(), tol, e.what()};
  }
}

const double kGammas[] = {0.8, std::numbers::sqrt2, 1.8};

}  // namespace

std::vector<Check> run_analytic_suite() {
  std::vector<Check> out;

  for (double s : {0.25, 0.5, 1.0, 2.0, 10.0}) {
    const std::string name = fmt("residue_integral s=%g", s);
    out.push_back(guarded(name, 1e-8, [&] {
      const auto q = integrate_1d([s](double phi) { return residue_integrand(s, phi); }, 0.0, std::numbers::pi, 1e-12);
      const double err = std::abs(q.value - residue_integral(s));
      return make(name, err, 1e-8, fmt("quadrature %.15g closed form %.15g", q.value, residue_integral(s)));
    }));
  }

  for (double g : kGammas) {
    const auto p = derive_params(g);
    for (double t : {0.5, 1.0, 3.0}) {
      const std::string name = fmt("time_t_law_mass gamma=%.6g t=%g", g, t);
      out.push_back(guarded(name, 1e-6, [&] {
        const auto outer = integrate_1d(
            [&](double phi) {
              return integrate_1d([&](double r) { return r * time_t_pdf(p, {r, phi}, t); }, 0.0, INFINITY, 1e-12)
                  .value;
            },
            0.0, p.theta, 1e-10);
        return make(name, std::abs(outer.value - 1.0), 1e-6, fmt("mass %.12g", outer.value));
      }));
    }
    for (const ConePoint z : {ConePoint{1.0, 0.5 * p.theta}, ConePoint{0.3, 0.2 * p.theta}, ConePoint{2.5, 0.9 * p.theta}}) {
      const std::string name = fmt("exit_point_law_mass gamma=%.6g |z|=%g arg/theta=%g", g, z.r, z.phi / p.theta);
      out.push_back(guarded(name, 1e-6, [&] {
        double mass = 0.0;
        for (auto side : {BoundarySide::angle_zero, BoundarySide::angle_theta}) {
          // Split at |z|, where the density peaks.
          auto f = [&](double u) { return u > 0.0 ? exit_point_pdf_given_z(p, z, {u, side}) : 0.0; };
          mass += integrate_1d(f, 0.0, z.r, 1e-12).value + integrate_1d(f, z.r, INFINITY, 1e-12).value;
        }
        return make(name, std::abs(mass - 1.0), 1e-6, fmt("mass %.12g", mass));
      }));
    }
  }

  {
    const auto p = derive_params(std::numbers::sqrt2);
    const double v = cone_survival(p, {1.0, BoundarySide::angle_zero}, 1e-4);
    out.push_back(make("survival_short_time gamma=sqrt2 |u|=1 t=1e-4", std::abs(v - 1.0), 1e-3, fmt("survival %.12g", v)));
  }

  for (double g : kGammas) {
    const auto p = derive_params(g);
    const double l = p.lambda_exp;
    const double c6 = std::pow(2.0, -l) / std::tgamma(1.0 + l);
    out.push_back(make(fmt("survival_constant gamma=%.6g", g), std::abs(survival_constant(p) / c6 - 1.0), 1e-12,
                       fmt("c6 %.15g", survival_constant(p))));

    const auto law = make_area_law(p);
    const std::string cname = fmt("area_normalizer gamma=%.6g", g);
    out.push_back(guarded(cname, 1e-8, [&] {
      const double s = p.a_const * std::sin(p.theta);
      const double c_closed = std::pow(2.0, l) * std::tgamma(l) * std::pow(s, 2.0 * l);
      auto f = [&](double t) { return t > 0.0 ? std::exp(-(1.0 + l) * std::log(t) - law.rate_b / t) : 0.0; };
      const double c_quad = integrate_1d(f, 0.0, INFINITY, 1e-13 * c_closed).value;
      const double rel = std::max(std::abs(law.norm_c / c_closed - 1.0), std::abs(c_quad / c_closed - 1.0));
      return make(cname, rel, 1e-8, fmt("c %.15g quadrature %.15g", law.norm_c, c_quad));
    }));

    const BoundaryPoint u{p.unit_boundary_distance(), BoundarySide::angle_zero};
    for (double t : {0.2, 0.5, 2.0}) {
      const double h = 1e-4 * t;
      // Five-point central difference.
      const double d = (-cone_survival(p, u, t + 2 * h) + 8 * cone_survival(p, u, t + h) -
                        8 * cone_survival(p, u, t - h) + cone_survival(p, u, t - 2 * h)) /
                       (12 * h);
      const double pdf = disk_area_pdf(law, t);
      out.push_back(make(fmt("survival_derivative gamma=%.6g t=%g", g, t), std::abs(-d / pdf - 1.0), 1e-6,
                         fmt("-dS/dt %.12g pdf %.12g", -d, pdf)));
    }
  }
  return out;
}

nlohmann::ordered_json checks_to_json(const std::vector<Check>& checks) {
  auto arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"value", std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr)},
                   {"tolerance", c.tolerance},
                   {"detail", c.detail}});
  }
  return {{"suite", "analytic"}, {"passed", all}, {"checks", std::move(arr)}};
}

}  // namespace lqg
