#include "fgbc/atlas.hpp"

#include <algorithm>
#include <sstream>

namespace fgbc {

ChartTransition Manifold::transition(int from, int to) const {
  if (from < 0 || to < 0 || from >= chart_count() || to >= chart_count())
    throw DomainError("chart index out of range for " + name);
  const int flip = from ^ to;
  const int dim = n;
  ChartTransition t;
  t.from = from;
  t.to = to;
  t.map = [flip, dim](const CVec& z) {
    CVec w = z;
    for (int k = 0; k < dim; ++k)
      if ((flip >> k) & 1) {
        if (z(k) == 0.0) throw DomainError("point lies outside the chart overlap");
        w(k) = 1.0 / z(k);
      }
    return w;
  };
  t.jacobian = [flip, dim](const CVec& z) {
    CMat J = CMat::Identity(dim, dim);
    for (int k = 0; k < dim; ++k)
      if ((flip >> k) & 1) J(k, k) = -1.0 / (z(k) * z(k));
    return J;
  };
  return t;
}

CVec Manifold::change_chart(const CVec& z, int from, int to) const { return transition(from, to).map(z); }

Manifold make_manifold(const std::string& name) {
  if (name == "torus") return {name, 1, 0, ManifoldKind::torus};
  if (name == "torus-product") return {name, 2, 0, ManifoldKind::torus};
  if (name == "cp1") return {name, 1, 2, ManifoldKind::projective};
  if (name == "cp1xcp1") return {name, 2, 4, ManifoldKind::projective};
  if (name == "plane") return {name, 1, 1, ManifoldKind::plane};
  if (name == "plane2") return {name, 2, 1, ManifoldKind::plane};
  throw DomainError("unknown manifold '" + name + "'");
}

std::vector<std::string> builtin_manifold_names() {
  return {"torus", "torus-product", "cp1", "cp1xcp1", "plane", "plane2"};
}

namespace {

std::vector<double> solve_fit(const std::vector<double>& x, const std::vector<double>& y,
                              const std::vector<int>& powers) {
  const int k = static_cast<int>(powers.size());
  RMat A(k, k);
  RVec b(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) A(r, c) = std::pow(x[static_cast<std::size_t>(r)], powers[static_cast<std::size_t>(c)]);
    b(r) = y[static_cast<std::size_t>(r)];
  }
  const RVec s = A.fullPivLu().solve(b);
  return std::vector<double>(s.data(), s.data() + k);
}

}  // namespace

double extrapolate_eps(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.empty()) throw DomainError("extrapolation needs matching samples");
  if (eps.size() == 1) return values[0];
  const std::size_t k = std::min<std::size_t>(3, eps.size());
  const std::vector<double> x(eps.end() - static_cast<std::ptrdiff_t>(k), eps.end());
  const std::vector<double> y(values.end() - static_cast<std::ptrdiff_t>(k), values.end());
  std::vector<int> powers;
  for (std::size_t j = 0; j < k; ++j) powers.push_back(2 * static_cast<int>(j));
  return solve_fit(x, y, powers)[0];
}

double extrapolation_error(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() < 2) return 0.0;
  if (eps.size() == 2) return std::abs(extrapolate_eps(eps, values) - values.back());
  const std::vector<double> x(eps.end() - 2, eps.end());
  const std::vector<double> y(values.end() - 2, values.end());
  return std::abs(extrapolate_eps(eps, values) - solve_fit(x, y, {0, 2})[0]);
}

namespace {

struct PieceNodes {
  NodeSet outer;                // always counted
  std::vector<NodeSet> shells;  // shells[k]: eps[k] <= rho <= eps[k-1] around the centered zero
  std::vector<FieldZero> dropped;
};

bool is_center(const FieldZero& z) { return z.point.norm() == 0.0; }

PieceNodes piece_nodes(const Manifold& M, int chart, const std::vector<FieldZero>& zeros,
                       const std::vector<double>& eps, int m) {
  PieceNodes p;
  const int n = M.n;
  bool centered = false;
  for (const auto& z : zeros) {
    if (z.chart != chart) continue;
    if (M.kind == ManifoldKind::projective && is_center(z)) {
      centered = true;
    } else {
      p.dropped.push_back(z);
    }
  }
  if (M.kind == ManifoldKind::torus) {
    p.outer = torus_nodes(n, m);
    return p;
  }
  const int n_r = m, n_phi = n == 1 ? 2 * m : m, n_eta = std::max(2, m / 2);
  if (!centered || eps.empty()) {
    p.outer = n == 1 ? disk_nodes(0.0, 0.0, 1.0, n_r, n_phi) : polydisk_nodes(CVec::Zero(2), 0.0, 1.0, n_r, 2 * m);
    return p;
  }
  p.outer = polydisk_minus_ball_nodes(n, eps[0], n_r, n_eta, n_phi);
  const int shell_r = std::max(3, m / 2);
  for (std::size_t k = 1; k < eps.size(); ++k)
    p.shells.push_back(shell_nodes(CVec::Zero(n), eps[k], eps[k - 1], shell_r, 2 * n_eta, n_phi));
  return p;
}

std::vector<double> piece_values(const ChartFormField& field, const Manifold& M, int chart, const PieceNodes& p,
                                 const std::vector<double>& eps, std::size_t& count) {
  auto f = [&](const CVec& z) { return field(z, chart); };
  auto integrate = [&](const NodeSet& nodes) {
    count += nodes.size();
    return integrate_nodes(f, nodes).real();
  };
  std::vector<double> out(std::max<std::size_t>(1, eps.size()), 0.0);
  if (p.dropped.empty()) {
    const double base = integrate(p.outer);
    double acc = base;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (k > 0 && k - 1 < p.shells.size()) acc += integrate(p.shells[k - 1]);
      out[k] = acc;
    }
    return out;
  }
  // node dropping: values per node, then masked sums per radius
  count += p.outer.size();
  const auto vals = parallel_map<double>(p.outer.size(), [&](std::size_t k) {
    const FormNode& node = p.outer[k];
    for (const auto& z : p.dropped)
      if ((node.point - z.point).norm() < eps.back()) return 0.0;
    std::vector<TangentVector> frame;
    for (const auto& t : node.tangents) frame.push_back(TangentVector::real_base(t));
    return node.weight * evaluate(f(node.point), frame).real();
  });
  for (std::size_t r = 0; r < out.size(); ++r) {
    NeumaierSum s;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      bool inside = false;
      for (const auto& z : p.dropped)
        if (!eps.empty() && (p.outer[k].point - z.point).norm() < eps[r]) inside = true;
      if (!inside) s.add(vals[k]);
    }
    out[r] = s.value();
  }
  (void)M;
  return out;
}

std::vector<double> complement_values(const ChartFormField& field, const Manifold& M,
                                      const std::vector<FieldZero>& zeros, const std::vector<double>& eps, int m,
                                      std::size_t& count) {
  std::vector<double> total(std::max<std::size_t>(1, eps.size()), 0.0);
  for (int c = 0; c < M.chart_count(); ++c) {
    const PieceNodes p = piece_nodes(M, c, zeros, eps, m);
    const auto v = piece_values(field, M, c, p, eps, count);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += v[k];
  }
  return total;
}

}  // namespace

ComplementIntegral integrate_complement(const ChartFormField& field, const Manifold& M,
                                        const std::vector<FieldZero>& zeros, std::vector<double> eps,
                                        MeshOptions mesh) {
  if (!M.compact()) throw DomainError("integration over " + M.name + " needs a compact manifold");
  if (mesh.level < 2) throw DomainError("mesh level must be at least 2");
  if (!zeros.empty() && eps.empty()) throw DomainError("zeros present but no excision radii given");
  for (std::size_t k = 1; k < eps.size(); ++k)
    if (!(eps[k] < eps[k - 1])) throw DomainError("excision radii must decrease");
  if (!eps.empty() && !(eps.front() < 1.0 && eps.back() > 0.0)) throw DomainError("excision radii must lie in (0, 1)");
  for (std::size_t a = 0; a < zeros.size(); ++a)
    for (std::size_t b = a + 1; b < zeros.size(); ++b)
      if (zeros[a].chart == zeros[b].chart && (zeros[a].point - zeros[b].point).norm() < 2.0 * eps.front())
        throw DomainError("excision balls around " + format_point(zeros[a].point) + " and " +
                          format_point(zeros[b].point) + " overlap");
  if (zeros.empty()) eps.clear();

  ComplementIntegral out;
  out.eps = eps;
  out.values = complement_values(field, M, zeros, eps, mesh.level, out.nodes);
  const std::vector<double> e = eps.empty() ? std::vector<double>{0.0} : eps;
  out.extrapolated = eps.empty() ? out.values[0] : extrapolate_eps(e, out.values);
  double err = eps.empty() ? 0.0 : extrapolation_error(e, out.values);
  if (mesh.estimate_error) {
    const int coarse = std::max(2, (3 * mesh.level) / 4);
    std::size_t dummy = 0;
    out.coarse = complement_values(field, M, zeros, eps, coarse, dummy);
    const double c = eps.empty() ? out.coarse[0] : extrapolate_eps(e, out.coarse);
    err += std::abs(c - out.extrapolated);
  }
  out.error = err;
  return out;
}

HopfResult hopf_check(const Manifold& M, const HolomorphicField& X) {
  HopfResult r;
  r.chi = M.chi;
  const auto zs = X.zeros();
  r.zeros = static_cast<int>(zs.size());
  std::ostringstream msg;
  bool degenerate = false;
  for (const auto& z : zs) {
    const cplx d = X.jacobian(z.point, z.chart).determinant();
    r.determinants.push_back(d);
    if (std::abs(d) < 1e-10) {
      degenerate = true;
      msg << "degenerate zero at " << format_point(z.point) << " in chart " << z.chart << " (det dX/dz = "
          << std::abs(d) << "); ";
    }
  }
  if (degenerate) {
    r.ok = false;
  } else if (r.zeros != r.chi) {
    r.ok = false;
    msg << "zero count " << r.zeros << " differs from chi = " << r.chi;
  } else {
    r.ok = true;
    msg << "zero count " << r.zeros << " = chi";
  }
  r.message = msg.str();
  return r;
}

}  // namespace fgbc
