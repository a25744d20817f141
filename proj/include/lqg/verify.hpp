#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace lqg {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0;      // the measured discrepancy
  double tolerance = 0;  // passes when value < tolerance
  std::string detail;
};

/// Quadrature and closed-form identities: residue integral, normalization of the time-t and
/// exit-point laws, short-time survival, the survival constant, the area-law normalizer, and
/// d/dt survival = -area pdf.
std::vector<Check> run_analytic_suite();

nlohmann::ordered_json checks_to_json(const std::vector<Check>& checks);

}  // namespace lqg
