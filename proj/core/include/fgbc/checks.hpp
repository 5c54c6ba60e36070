#pragma once

#include <array>
#include <string>

#include "fgbc/connection.hpp"
#include "fgbc/volume.hpp"

namespace fgbc {

/// Seeded (chart, z, xi) samples: z in the unit polydisk, xi on the unit
/// sphere at least 1e-3 away from the metric's degeneracy locus.
struct MetricSample {
  int chart = 0;
  CVec z, xi;
};
std::vector<MetricSample> metric_samples(const FinslerMetric& m, int count, std::uint64_t seed, int charts = 1);

struct MetricCheck {
  std::string metric;
  int samples = 0;
  std::array<double, kHomogeneityIdentities> max_residual{};
  double worst = 0.0;
  double cartan_min = 0.0, cartan_max = 0.0;
  PseudoconvexityScan scan;
  double tolerance = 0.0;
  bool passed = false;
};
MetricCheck check_metric(const FinslerMetric& m, int samples, std::uint64_t seed, int charts = 1,
                         double tolerance = 1e-9);

struct StructureCheck {
  std::string metric;
  int samples = 0;
  double max_del = 0.0;
  double max_dbar = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};
StructureCheck check_structure(const FinslerMetric& m, int samples, std::uint64_t seed, int charts = 1,
                               double tolerance = 1e-6);

struct VolumeSample {
  int chart = 0;
  CVec z;
  VolumeValue value;
};
/// vol along Re z^1 in [-0.9, 0.9] (other coordinates 0.3 i), chart 0.
std::vector<VolumeSample> volume_sweep(const FinslerMetric& m, int points, const SphereRule& rule);
/// Largest relative deviation between the sweep values.
double volume_spread(const std::vector<VolumeSample>& sweep);

}  // namespace fgbc
