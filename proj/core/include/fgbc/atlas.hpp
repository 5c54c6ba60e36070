#pragma once

#include <functional>
#include <string>

#include "fgbc/calculus.hpp"
#include "fgbc/field.hpp"

namespace fgbc {

/// torus: one fundamental square [0,1]^{2n}. projective: (CP^1)^n, chart bit k
/// uses w = 1/z in factor k, cover pieces are the unit polydisks of all charts.
/// plane: C^n with one chart and no cover (local computations only).
enum class ManifoldKind { torus, projective, plane };

struct Manifold {
  std::string name;
  int n = 1;
  int chi = 0;
  ManifoldKind kind = ManifoldKind::torus;

  int chart_count() const { return kind == ManifoldKind::projective ? 1 << n : 1; }
  bool compact() const { return kind != ManifoldKind::plane; }
  /// Transition from chart a to chart b (projective only; identity otherwise).
  ChartTransition transition(int from, int to) const;
  /// Same point, other chart coordinates.
  CVec change_chart(const CVec& z, int from, int to) const;
};

/// Names: torus (n=1), torus-product (T x T), cp1, cp1xcp1, plane, plane2.
Manifold make_manifold(const std::string& name);
std::vector<std::string> builtin_manifold_names();

using ChartFormField = std::function<ExteriorForm(const CVec&, int)>;

/// Interpolates a + b eps^2 + c eps^4 through the smallest radii (as many
/// terms as samples, at most three) and returns a. Odd powers vanish for
/// balls centered at a zero: the antipodal map preserves the sphere's orientation.
double extrapolate_eps(const std::vector<double>& eps, const std::vector<double>& values);
/// |full fit - fit of a + b eps^2 through the two smallest radii|.
double extrapolation_error(const std::vector<double>& eps, const std::vector<double>& values);

struct ComplementIntegral {
  std::vector<double> eps;
  std::vector<double> values;      // integral over M minus the eps-balls, per radius
  std::vector<double> coarse;      // same on the coarse mesh (empty when not requested)
  double extrapolated = 0.0;
  double error = 0.0;              // mesh difference plus extrapolation error
  std::size_t nodes = 0;
};

struct MeshOptions {
  int level = 8;
  bool estimate_error = true;
};

/// Integral of a top-degree field over M minus balls B_eps(zero) in each zero's chart.
/// A zero at the center of its cover piece is excised exactly with spherical shells;
/// other zeros drop the nodes inside the ball. Real part returned.
ComplementIntegral integrate_complement(const ChartFormField& field, const Manifold& M,
                                        const std::vector<FieldZero>& zeros, std::vector<double> eps,
                                        MeshOptions mesh = {});

/// Hopf count: zeros nondegenerate and equal in number to chi.
struct HopfResult {
  bool ok = false;
  int zeros = 0;
  int chi = 0;
  std::vector<cplx> determinants;
  std::string message;
};
HopfResult hopf_check(const Manifold& M, const HolomorphicField& X);

}  // namespace fgbc
