#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>

#include "fgbc/jet.hpp"

namespace fgbc {

struct MetricFlags {
  bool hermitian = false;
  bool locally_minkowski = false;
  bool berwald = false;
};

/// Complex Finsler metric given chartwise by G = F^2 on Jets.
class FinslerMetric {
 public:
  virtual ~FinslerMetric() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual MetricFlags flags() const = 0;
  virtual Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const = 0;

  /// Fiber directions where the fiber Hessian is allowed to degenerate.
  virtual bool on_degeneracy_locus(const CVec& xi, double tol) const;
  virtual std::string locus_description() const { return "none"; }

  /// Plain value of G.
  double value(const CVec& z, const CVec& xi, int chart = 0) const;
};

using MetricPtr = std::shared_ptr<const FinslerMetric>;

/// Fiberwise tensors at one point. g(i, j) = G_{i jbar}, ginv(i, j) = G^{i jbar}
/// with sum_j ginv(i, j) g(k, j) = delta; g3(i, j, k) = G_{i jbar k};
/// cartan(k, i, j) = C^k_{ij} = G^{k lbar} G_{i lbar j}.
struct MetricTensors {
  double G = 0.0;
  CVec Gi;
  CMat Gij;    // G_{ij}
  CMat Gaa;    // G_{ibar jbar}
  CMat g;
  CMat ginv;
  Tensor3 Gijk;   // G_{ijk}
  Tensor3 Gijkb;  // G_{i j kbar}
  Tensor3 g3;
  Tensor3 cartan;
  double min_eigenvalue = 0.0;
};

MetricTensors metric_tensors(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);

/// Residuals of the eleven homogeneity identities, in this order:
/// conj(G_{ijbar}) = G_{jibar}; G^{ijbar} G_{kjbar} = delta; G^{ijbar} G_{ikbar} = delta;
/// G = G_{ijbar} xi xibar; G_i xi^i = G; G_{ijbar} xibar^j = G_i; G_{ij} xi^j = 0;
/// G_{ibar jbar} xibar^j = 0; G_{ijk} xi^k = -G_{ij}; G_{ij kbar} xibar^k = G_{ij};
/// G_{i jbar k} xi^k = 0.
inline constexpr int kHomogeneityIdentities = 11;
std::array<double, kHomogeneityIdentities> homogeneity_report(const FinslerMetric& m, const CVec& z, const CVec& xi,
                                                              int chart = 0);
const std::array<const char*, kHomogeneityIdentities>& homogeneity_labels();

double cartan_norm(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);

struct PseudoconvexityScan {
  double min_eigenvalue = 0.0;
  CVec worst_xi;
  int samples = 0;
  int skipped_on_locus = 0;
  bool locus_warning = false;
};

/// Fiber Hessian G_{i jbar} alone; no invertibility required.
CMat fiber_hessian(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);

/// Seeded fiber directions on the unit sphere, skipping the declared locus.
/// Extra directions are always evaluated; locus hits among them raise the warning.
PseudoconvexityScan pseudoconvexity_scan(const FinslerMetric& m, const CVec& z, int samples, std::uint64_t seed,
                                         int chart = 0, const std::vector<CVec>& extra_directions = {});

}  // namespace fgbc
