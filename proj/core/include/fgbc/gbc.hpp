#pragma once

#include "fgbc/atlas.hpp"
#include "fgbc/scenario.hpp"

namespace fgbc {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Boundary integrals of Re Lambda_2 / vol around one zero, per radius.
struct ZeroTable {
  FieldZero zero;
  std::vector<double> eps;
  std::vector<double> values;
  Estimate extrapolated;
};

struct GbcReport {
  std::string scenario;
  int n = 0;
  int chi = 0;
  double target = 0.0;  // chi / vol(S^{2n-1})
  Estimate lhs;          // direct integral of (X*c_n + correction) / vol
  Estimate rhs;          // sum of boundary extrapolations
  ComplementIntegral lhs_detail;
  std::vector<ZeroTable> zeros;
  HopfResult hopf;
  std::string volume_mode;
  double tolerance = 0.0;
  double stokes_gap = 0.0;
  bool stokes_consistent = false;
  bool lhs_ok = false;
  bool rhs_ok = false;
  bool passed = false;
  double seconds_lhs = 0.0;
  double seconds_rhs = 0.0;
};

/// Tolerance test used throughout: relative to |target|, absolute when target = 0.
bool within(double value, double target, double tol);

ZeroTable degree_table(const FinslerMetric& m, const HolomorphicField& X, const FieldZero& zero,
                       const std::vector<double>& eps, const VolumeModel& vol, SphereResolution res);
std::vector<ZeroTable> degree_tables(const Scenario& s);

GbcReport gbc_verify(const Scenario& s);

/// (i / vol) times the integral of dbar del log G(z, X(z)) over the complement, n = 1.
struct CorollaryReport {
  std::string scenario;
  int chi = 0;
  Estimate value;
  ComplementIntegral detail;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};
CorollaryReport riemann_surface_check(const Scenario& s);

HopfResult hopf_check(const Scenario& s);

/// Pointwise transgression diagnostics at seeded points away from the zeros.
struct PointSample {
  int chart = 0;
  CVec z;
  double lemma = 0.0, lemma_half = 0.0;        // plain central differences at h and h/2
  double identity = 0.0, identity_half = 0.0;
  double xcn = 0.0;         // max |X*c_n|
  double correction = 0.0;  // max |correction integrand|
};
struct PointwiseReport {
  std::string scenario;
  std::vector<PointSample> samples;
  double max_lemma = 0.0;
  double max_identity = 0.0;
  double max_xcn = 0.0;
  double max_correction = 0.0;
  /// Every sample either halves-to-a-quarter (ratio >= 3) or sits below the rounding floor.
  bool quadratic_decay = false;
};
PointwiseReport pointwise_checks(const Scenario& s);
/// Seeded sample points in the cover pieces, at least 0.25 from the chart origins.
std::vector<std::pair<int, CVec>> sample_points(const Manifold& M, int count, std::uint64_t seed);

}  // namespace fgbc
