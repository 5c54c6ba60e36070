#pragma once

#include <functional>

#include "fgbc/calculus.hpp"
#include "fgbc/forms.hpp"
#include "fgbc/metric.hpp"

namespace fgbc {

/// How far the jet pipeline goes: N needs order 2, Gamma and C order 3,
/// the curvature blocks order 4.
enum class ConnectionLevel { nonlinear = 2, rund = 3, curvature = 4 };

/// Index conventions: N(j, k) = N^j_k, gamma(k, i, s) = Gamma^k_{i,s},
/// cartan(k, i, l) = C^k_{il}, R(j, i, k, l) = R^j_{i k lbar} (same for P, S, Q).
/// Form matrices put the upper index in the column: entry (i, k) = varpi^k_i.
struct ConnectionPoint {
  int n = 0;
  int chart = 0;
  ConnectionLevel level = ConnectionLevel::nonlinear;
  CVec z, xi;
  double G = 0.0;
  CVec Gi;
  CMat g, ginv;
  CMat N;
  /// d^2 G / d xi^i d zbar^t at (i, t); needs level >= rund.
  CMat Gi_zbar;
  Tensor3 gamma, cartan;
  Tensor4 R, P, S, Q;

  /// varpi in the adapted coframe {dz, delta xi}.
  FormMatrix connection_form() const;
  FormMatrix horizontal_form() const;
  FormMatrix vertical_form() const;
  /// Omega assembled from the four blocks, adapted coframe.
  FormMatrix curvature_form() const;
};

ConnectionPoint connection_point(const FinslerMetric& m, const CVec& z, const CVec& xi, ConnectionLevel level,
                                 int chart = 0);

CMat nonlinear_connection(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);

struct ChernFinslerForm {
  FormMatrix form;
  Tensor3 gamma;
  Tensor3 cartan;
};

ChernFinslerForm chern_finsler_form(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);
ConnectionPoint curvature(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0);

struct StructureResiduals {
  double del_minus_square = 0.0;  // max |del varpi - varpi ^ varpi|
  double omega_minus_dbar = 0.0;  // max |Omega - dbar varpi|
};

/// Both structure equations with the derivatives of varpi taken by central
/// differences over (z, xi), compared in the coordinate coframe.
StructureResiduals structure_residuals(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart = 0,
                                       NumericStep step = {});

struct Curve {
  std::function<CVec(double)> point;
  std::function<CVec(double)> velocity;
};

struct TransportPath {
  std::vector<double> t;
  std::vector<CVec> v;
  std::vector<double> norm;  // F(z(t), v(t))
  /// True when Gamma depended on the transported vector (non-Berwald metric).
  bool nonlinear = false;
};

/// RK4 for dv^i/dt = -v^j Gamma^i_{j,k}(z(t), v(t)) dz^k/dt on t in [0, 1].
TransportPath parallel_transport(const FinslerMetric& m, const Curve& curve, const CVec& v0, int steps,
                                 int chart = 0);

}  // namespace fgbc
