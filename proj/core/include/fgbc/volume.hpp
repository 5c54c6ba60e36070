#pragma once

#include <map>
#include <shared_mutex>
#include <string>

#include "fgbc/calculus.hpp"
#include "fgbc/metric.hpp"

namespace fgbc {

/// Nodes on the Euclidean unit sphere of a fiber, with the metric-free
/// part of the volume density already evaluated on each node's frame.
class SphereRule {
 public:
  /// Product rule: n = 1 uses n_phi equispaced angles; n = 2 uses Hopf
  /// angles with n_eta Gauss-Legendre nodes and n_phi x n_phi azimuths.
  static SphereRule product(int n, int n_eta, int n_phi);
  /// Seeded uniform samples with orthonormal oriented frames.
  static SphereRule monte_carlo(int n, std::size_t count, std::uint64_t seed);
  /// Default rule: S^1 with 256 nodes, S^3 with 32 x 64 x 64.
  static SphereRule standard(int n);

  int dim() const { return n_; }
  const NodeSet& nodes() const { return nodes_; }
  const std::vector<double>& density() const { return density_; }
  const std::string& descriptor() const { return descriptor_; }
  bool is_monte_carlo() const { return mc_; }
  /// Same family at half resolution (error estimates).
  SphereRule coarser() const;
  /// Sum of weights times the Euclidean area element of each frame.
  double euclidean_area() const;

 private:
  void finish();
  int n_ = 0;
  int n_eta_ = 0, n_phi_ = 0;
  bool mc_ = false;
  std::uint64_t seed_ = 0;
  NodeSet nodes_;
  std::vector<double> density_;  // weight * Re(e^{-i pi n^2/2} beta)(frame)
  std::string descriptor_;
};

struct VolumeValue {
  double vol = 0.0;
  double error = 0.0;
  std::string rule;
};

/// det h / (2^{n-1} G^n) * Re(e^{-i pi n^2/2} sum (-1)^{i-1} xibar^i dxibar[i] ^ dxi), fiber labels.
ExteriorForm sigma_density(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);
/// Metric factor det h / (2^{n-1} G^n) of the density.
double sigma_prefactor(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);

/// Integral of the density over the rule, no error estimate.
double volume_value(const FinslerMetric& m, const CVec& z, const SphereRule& rule, int chart = 0);
/// Value plus error estimate (coarser rule difference, or Monte Carlo standard error).
VolumeValue volume(const FinslerMetric& m, const CVec& z, const SphereRule& rule, int chart = 0);
double reference_volume(int n);

/// d log vol as a base 1-form by central differences of log vol.
ExteriorForm log_volume_differential(const FinslerMetric& m, const CVec& z, const SphereRule& rule, int chart = 0,
                                     NumericStep step = {});

/// vol(z) memoized per chart and exact point; concurrent readers, single writer.
class VolumeCache {
 public:
  VolumeCache(const FinslerMetric& m, SphereRule rule) : m_(m), rule_(std::move(rule)) {}
  double operator()(const CVec& z, int chart = 0);
  const SphereRule& rule() const { return rule_; }
  std::size_t size() const;

 private:
  const FinslerMetric& m_;
  SphereRule rule_;
  mutable std::shared_mutex mu_;
  std::map<std::vector<double>, double> table_;
};

}  // namespace fgbc
