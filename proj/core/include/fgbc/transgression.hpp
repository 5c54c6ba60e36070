#pragma once

#include <memory>

#include "fgbc/connection.hpp"
#include "fgbc/field.hpp"
#include "fgbc/volume.hpp"

namespace fgbc {

/// degree: omega_X, Theta and the Lambda split (order-3 jets).
/// full: additionally X*Omega, the Psi_j and X*c_n (order-4 jets).
enum class TransgressionLevel { degree, full };

/// Everything evaluated at (z, X(z)). Matrices theta, mu use the natural
/// layout (k, i) = Theta^k_i; pulled_curvature uses the FormMatrix layout.
struct TransgressionPoint {
  int n = 0;
  int chart = 0;
  TransgressionLevel level = TransgressionLevel::degree;
  CVec z, x;
  CMat mu;
  ConnectionPoint connection;
  ExteriorForm omega, dbar_omega;
  CMat theta, theta_h, theta_v;
  FormMatrix pulled_curvature;
  std::vector<ExteriorForm> psi;  // Psi_0 .. Psi_{n-1}
  ExteriorForm lambda1, lambda2;
  ExteriorForm xcn;

  ExteriorForm psi_total() const;
};

TransgressionPoint transgression_point(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart = 0,
                                       TransgressionLevel level = TransgressionLevel::full);

/// omega_X and its dbar.
std::pair<ExteriorForm, ExteriorForm> omega_X(const FinslerMetric& m, const HolomorphicField& X, const CVec& z,
                                              int chart = 0);

struct ThetaSplit {
  CMat theta, horizontal, vertical;
};
ThetaSplit theta(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart = 0);
/// Theta by contracting the pulled-back connection form, for cross-checks.
CMat theta_from_forms(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart = 0);
/// det(Theta_H) / det(dX/dz).
cplx horizontal_degree_ratio(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart = 0);

/// vol(z) inside integrands. Hermitian metrics use the reference volume,
/// Berwald metrics one standard-rule value; otherwise a memoized fixed rule
/// with d log vol by central differences.
class VolumeModel {
 public:
  enum class Mode { reference, constant, pointwise };

  VolumeModel(const FinslerMetric& m, SphereRule rule, NumericStep step = {}, bool force_pointwise = false);
  Mode mode() const { return mode_; }
  double operator()(const CVec& z, int chart) const;
  ExteriorForm dlog(const CVec& z, int chart) const;
  const SphereRule& rule() const { return cache_->rule(); }

 private:
  const FinslerMetric& m_;
  Mode mode_;
  double constant_ = 0.0;
  NumericStep step_;
  std::unique_ptr<VolumeCache> cache_;
};

/// Default rule for vol inside integrands: S^1 with 64 nodes, S^3 with 4 x 8 x 8.
SphereRule integrand_sphere_rule(int n);

/// The correction integrand: sum_{j>=1} d Re Psi_j + d Re Lambda_1 + d log vol ^ Re Lambda_2.
ExteriorForm correction_integrand(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                                  const VolumeModel& vol, NumericStep step = {});
/// (X*c_n + correction) / vol.
ExteriorForm gbc_integrand(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                           const VolumeModel& vol, NumericStep step = {});
/// Re Lambda_2 / vol.
ExteriorForm degree_integrand(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                              const VolumeModel& vol);

struct TransgressionResidual {
  double lemma = 0.0;     // max |X*c_n + d Psi|
  double identity = 0.0;  // max |(X*c_n + correction)/vol + d(Re Lambda_2 / vol)|
};
TransgressionResidual transgression_residual(const FinslerMetric& m, const HolomorphicField& X, const CVec& z,
                                             int chart, const VolumeModel& vol, NumericStep step = {});

/// max |dbar Theta - iota(X) X*Omega| entrywise.
double theta_dbar_residual(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart = 0,
                           NumericStep step = {});

struct TensorialityResult {
  double theta = 0.0;  // max |Theta' - J Theta J^{-1}|
  double mu = 0.0;     // same for dX/dz alone (control)
};
/// Compares Theta in two charts at one point of the overlap.
TensorialityResult tensoriality_check(const FinslerMetric& m, const HolomorphicField& X, const ChartTransition& t,
                                      const CVec& z);
/// Same, with separate metric and field descriptions for the target chart.
TensorialityResult tensoriality_check(const FinslerMetric& m, const HolomorphicField& X, const FinslerMetric& m2,
                                      const HolomorphicField& X2, const ChartTransition& t, const CVec& z);

struct SphereResolution {
  int n_eta = 8;
  int n_phi = 16;
};

/// Integral of Re Lambda_2 / vol over the coordinate sphere |z - zeta| = eps, outward.
double boundary_degree(const FinslerMetric& m, const HolomorphicField& X, const FieldZero& zero, double eps,
                       const VolumeModel& vol, SphereResolution res = {});

}  // namespace fgbc
