#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fgbc/atlas.hpp"
#include "fgbc/field.hpp"
#include "fgbc/metric.hpp"
#include "fgbc/transgression.hpp"

namespace fgbc {

/// Manifold, metric and field with every numerical knob of a run.
struct Scenario {
  std::string name = "custom";
  std::string manifold = "cp1";
  std::string metric = "fubini-study";
  double lambda = 0.0;
  std::string field = "euler";
  int mesh = 8;
  std::vector<double> eps{0.2, 0.1, 0.05};
  int rule_eta = 4;  // sphere rule for vol inside integrands
  int rule_phi = 8;
  int boundary_eta = 8;  // coordinate spheres around zeros
  int boundary_phi = 16;
  double step = 1e-4;
  bool richardson = true;
  std::uint64_t seed = 20240611;
  double tolerance = 0.02;  // relative, or absolute when the target is 0
  int samples = 20;
  int swap_charts = 0;  // chart bit mask applied to metric and field
  bool error_estimate = true;
};

/// key = value lines, '#' comments. A "scenario = <builtin>" line (first)
/// loads a catalog entry to override. Unknown keys are rejected by name.
Scenario parse_scenario(std::istream& in, const std::string& source = "<input>");
Scenario load_scenario(const std::string& path);
std::string scenario_text(const Scenario& s);
std::vector<std::string> scenario_keys();

/// Catalog entries a..f; looked up by letter or by name.
const std::vector<Scenario>& builtin_scenarios();
Scenario builtin_scenario(const std::string& key);

Manifold scenario_manifold(const Scenario& s);
MetricPtr scenario_metric(const Scenario& s);
FieldPtr scenario_field(const Scenario& s);
SphereRule scenario_rule(const Scenario& s);
NumericStep scenario_step(const Scenario& s);
/// Checks the combination; throws DomainError naming the problem.
void validate(const Scenario& s);

}  // namespace fgbc
