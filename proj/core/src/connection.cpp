#include "fgbc/connection.hpp"

#include <sstream>

namespace fgbc {

namespace {

using JetMatrix = std::vector<std::vector<Jet>>;

JetMatrix jet_matrix(int n) { return JetMatrix(static_cast<std::size_t>(n), std::vector<Jet>(static_cast<std::size_t>(n))); }

// Inverse of a jet matrix by Gauss-Jordan elimination, pivoting on values.
JetMatrix invert(JetMatrix a) {
  const std::size_t n = a.size();
  JetMatrix inv = jet_matrix(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = Jet(a[i][j].space_ptr(), i == j ? 1.0 : 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c].value()) > std::abs(a[piv][c].value())) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const Jet p = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] / p;
      inv[c][j] = inv[c][j] / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Jet f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

ConnectionPoint connection_point(const FinslerMetric& m, const CVec& z, const CVec& xi, ConnectionLevel level,
                                 int chart) {
  const int n = m.dim();
  if (z.size() != n || xi.size() != n) throw DomainError("point dimension does not match metric " + m.name());
  const int order = static_cast<int>(level);
  const JetPoint p = JetPoint::seed_all(z, xi, order);
  const Jet G = m.squared_norm(chart, p.z(), p.xi());

  ConnectionPoint cp;
  cp.n = n;
  cp.chart = chart;
  cp.level = level;
  cp.z = z;
  cp.xi = xi;
  cp.G = G.value().real();
  cp.Gi = CVec(n);
  cp.g = CMat(n, n);
  cp.N = CMat(n, n);

  std::vector<Jet> Gi, Gib;
  for (int i = 0; i < n; ++i) {
    Gi.push_back(p.holo(G, xivar(i)));
    Gib.push_back(p.anti(G, xivar(i)));
    cp.Gi(i) = Gi.back().value();
  }
  JetMatrix H = jet_matrix(n), Ht = jet_matrix(n), Mz = jet_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      H[i][j] = p.anti(Gi[i], xivar(j));
      Ht[j][i] = H[i][j];
      Mz[i][j] = p.holo(Gib[i], zvar(j));
      cp.g(i, j) = H[i][j].value();
    }
  const double scale = std::pow(std::max(cp.g.cwiseAbs().maxCoeff(), 1e-300), n);
  if (!(std::abs(cp.g.determinant()) >= 1e-12 * scale)) {
    std::ostringstream os;
    os << "fiber Hessian of " << m.name() << " is singular at z=" << format_point(z) << " xi=" << format_point(xi);
    throw DegeneracyError(os.str());
  }
  const JetMatrix K = invert(Ht);  // K[i][j] = G^{i jbar}
  cp.ginv = CMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cp.ginv(i, j) = K[i][j].value();

  JetMatrix N = jet_matrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Jet s(0.0);
      for (int i = 0; i < n; ++i) s += K[j][i] * Mz[i][k];
      N[j][k] = s;
      cp.N(j, k) = s.value();
    }
  if (level == ConnectionLevel::nonlinear) return cp;

  cp.Gi_zbar = CMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < n; ++t) cp.Gi_zbar(i, t) = p.anti(Gi[i], zvar(t)).value();

  // C and Gamma as jets of order (order - 3)
  std::vector<Jet> C(static_cast<std::size_t>(n * n * n)), Gam(static_cast<std::size_t>(n * n * n));
  auto at3 = [n](int a, int b, int c) { return static_cast<std::size_t>((a * n + b) * n + c); };
  {
    std::vector<Jet> dHxi(static_cast<std::size_t>(n * n * n)), dH(static_cast<std::size_t>(n * n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) dHxi[at3(i, j, l)] = p.holo(H[i][j], xivar(l));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) {
          Jet d = p.holo(H[i][j], zvar(s));
          for (int mm = 0; mm < n; ++mm) d -= N[mm][s] * dHxi[at3(i, j, mm)];
          dH[at3(i, j, s)] = d;
        }
    cp.cartan = Tensor3(n);
    cp.gamma = Tensor3(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          Jet c(0.0), g(0.0);
          for (int j = 0; j < n; ++j) {
            c += K[k][j] * dHxi[at3(i, j, l)];
            g += K[k][j] * dH[at3(i, j, l)];
          }
          C[at3(k, i, l)] = c;
          Gam[at3(k, i, l)] = g;
          cp.cartan(k, i, l) = c.value();
          cp.gamma(k, i, l) = g.value();
        }
  }
  if (level == ConnectionLevel::rund) return cp;

  // delta / delta zbar^l f = d f / d zbar^l - conj(N^m_l) d f / d xibar^m
  auto delta_bar = [&](const Jet& f, int l) {
    cplx v = p.anti(f, zvar(l)).value();
    for (int mm = 0; mm < n; ++mm) v -= std::conj(cp.N(mm, l)) * p.anti(f, xivar(mm)).value();
    return v;
  };
  cp.R = Tensor4(n);
  cp.P = Tensor4(n);
  cp.S = Tensor4(n);
  cp.Q = Tensor4(n);
  std::vector<cplx> dN(static_cast<std::size_t>(n * n * n)), pN(static_cast<std::size_t>(n * n * n));
  for (int s = 0; s < n; ++s)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        dN[at3(s, k, l)] = delta_bar(N[s][k], l);
        pN[at3(s, k, l)] = p.anti(N[s][k], xivar(l)).value();
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Jet& gam = Gam[at3(j, i, k)];
          const Jet& c = C[at3(j, i, k)];
          cplx r = delta_bar(gam, l), pp = p.anti(gam, xivar(l)).value();
          for (int s = 0; s < n; ++s) {
            r += cp.cartan(j, i, s) * dN[at3(s, k, l)];
            pp += cp.cartan(j, i, s) * pN[at3(s, k, l)];
          }
          cp.R(j, i, k, l) = -r;
          cp.P(j, i, k, l) = -pp;
          cp.S(j, i, k, l) = -delta_bar(c, l);
          cp.Q(j, i, k, l) = -p.anti(c, xivar(l)).value();
        }
  return cp;
}

FormMatrix ConnectionPoint::horizontal_form() const {
  if (level == ConnectionLevel::nonlinear) throw DomainError("connection form needs the rund level");
  FormMatrix w(n, n, 1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int s = 0; s < n; ++s) w.at(i, k) += ExteriorForm::covector(n, dz(s), gamma(k, i, s));
  return w;
}

FormMatrix ConnectionPoint::vertical_form() const {
  if (level == ConnectionLevel::nonlinear) throw DomainError("connection form needs the rund level");
  FormMatrix w(n, n, 1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) w.at(i, k) += ExteriorForm::covector(n, dxi(l), cartan(k, i, l));
  return w;
}

FormMatrix ConnectionPoint::connection_form() const { return horizontal_form() + vertical_form(); }

FormMatrix ConnectionPoint::curvature_form() const {
  if (level != ConnectionLevel::curvature) throw DomainError("curvature form needs the curvature level");
  FormMatrix w(n, n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          ExteriorForm& e = w.at(i, j);
          e += ExteriorForm::monomial(n, {dz(k), dzbar(l)}, R(j, i, k, l));
          e += ExteriorForm::monomial(n, {dz(k), dxibar(l)}, P(j, i, k, l));
          e += ExteriorForm::monomial(n, {dxi(k), dzbar(l)}, S(j, i, k, l));
          e += ExteriorForm::monomial(n, {dxi(k), dxibar(l)}, Q(j, i, k, l));
        }
  return w;
}

CMat nonlinear_connection(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  return connection_point(m, z, xi, ConnectionLevel::nonlinear, chart).N;
}

ChernFinslerForm chern_finsler_form(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  const ConnectionPoint cp = connection_point(m, z, xi, ConnectionLevel::rund, chart);
  return {cp.connection_form(), cp.gamma, cp.cartan};
}

ConnectionPoint curvature(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  return connection_point(m, z, xi, ConnectionLevel::curvature, chart);
}

namespace {

// Coefficients of varpi^k_i in the coordinate coframe: a(k,i,s) on dz^s and
// b(k,i,l) on dxi^l, flattened.
std::vector<cplx> coordinate_coefficients(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  const ConnectionPoint cp = connection_point(m, z, xi, ConnectionLevel::rund, chart);
  const int n = cp.n;
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(2 * n * n * n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < n; ++s) {
        cplx a = cp.gamma(k, i, s);
        for (int l = 0; l < n; ++l) a += cp.cartan(k, i, l) * cp.N(l, s);
        out.push_back(a);
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) out.push_back(cp.cartan(k, i, l));
  return out;
}

std::vector<cplx> axpy(const std::vector<cplx>& a, const std::vector<cplx>& b, double sa, double sb) {
  std::vector<cplx> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = sa * a[i] + sb * b[i];
  return r;
}

}  // namespace

StructureResiduals structure_residuals(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart,
                                       NumericStep step) {
  if (!(step.h >= 1e-8)) throw DomainError("numeric step below the 1e-8 guard");
  const int n = m.dim();
  auto eval = [&](const CVec& zz, const CVec& xx) { return coordinate_coefficients(m, zz, xx, chart); };
  // derivative of all coefficients along real direction (slot, index, imaginary)
  auto directional = [&](bool fiber, int idx, bool imag) {
    auto central = [&](double h) {
      CVec zp = z, zm = z, xp = xi, xm = xi;
      const cplx d = imag ? cplx(0.0, h) : cplx(h, 0.0);
      if (fiber) {
        xp(idx) += d;
        xm(idx) -= d;
      } else {
        zp(idx) += d;
        zm(idx) -= d;
      }
      return axpy(eval(zp, xp), eval(zm, xm), 0.5 / h, -0.5 / h);
    };
    auto d1 = central(step.h);
    if (!step.richardson) return d1;
    auto d2 = central(0.5 * step.h);
    return axpy(d2, d1, 4.0 / 3.0, -1.0 / 3.0);
  };

  const std::size_t per = static_cast<std::size_t>(n * n * n);
  auto a_index = [n](int k, int i, int s) { return static_cast<std::size_t>((k * n + i) * n + s); };

  // del varpi and dbar varpi in the coordinate coframe
  FormMatrix del(n, n, 2), dbar(n, n, 2);
  for (bool fiber : {false, true})
    for (int u = 0; u < n; ++u) {
      const auto dx = directional(fiber, u, false);
      const auto dy = directional(fiber, u, true);
      const CovectorLabel hol = fiber ? dxi(u) : dz(u);
      const CovectorLabel ant = fiber ? dxibar(u) : dzbar(u);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int s = 0; s < n; ++s) {
            const std::size_t ia = a_index(k, i, s), ib = per + a_index(k, i, s);
            const cplx da_h = 0.5 * (dx[ia] - I * dy[ia]), da_a = 0.5 * (dx[ia] + I * dy[ia]);
            const cplx db_h = 0.5 * (dx[ib] - I * dy[ib]), db_a = 0.5 * (dx[ib] + I * dy[ib]);
            del.at(i, k) += ExteriorForm::monomial(n, {hol, dz(s)}, da_h);
            del.at(i, k) += ExteriorForm::monomial(n, {hol, dxi(s)}, db_h);
            dbar.at(i, k) += ExteriorForm::monomial(n, {ant, dz(s)}, da_a);
            dbar.at(i, k) += ExteriorForm::monomial(n, {ant, dxi(s)}, db_a);
          }
    }

  const ConnectionPoint cp = connection_point(m, z, xi, ConnectionLevel::curvature, chart);
  const FormMatrix w = cp.connection_form().map([&](const ExteriorForm& f) { return adapted_to_coordinate(f, cp.N); });
  const FormMatrix omega = cp.curvature_form().map([&](const ExteriorForm& f) { return adapted_to_coordinate(f, cp.N); });
  StructureResiduals r;
  r.del_minus_square = (del - wedge(w, w)).max_abs();
  r.omega_minus_dbar = (omega - dbar).max_abs();
  return r;
}

TransportPath parallel_transport(const FinslerMetric& m, const Curve& curve, const CVec& v0, int steps, int chart) {
  if (steps < 8) throw DomainError("parallel transport needs at least 8 steps");
  TransportPath path;
  path.nonlinear = !m.flags().berwald;
  auto rhs = [&](double t, const CVec& v) {
    const CVec zt = curve.point(t), zd = curve.velocity(t);
    const ConnectionPoint cp = connection_point(m, zt, v, ConnectionLevel::rund, chart);
    const int n = cp.n;
    CVec dv = CVec::Zero(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int s = 0; s < n; ++s) dv(k) -= v(i) * cp.gamma(k, i, s) * zd(s);
    return dv;
  };
  const double h = 1.0 / steps;
  CVec v = v0;
  for (int s = 0; s <= steps; ++s) {
    const double t = s * h;
    path.t.push_back(t);
    path.v.push_back(v);
    path.norm.push_back(std::sqrt(m.value(curve.point(t), v, chart)));
    if (s == steps) break;
    const CVec k1 = rhs(t, v);
    const CVec k2 = rhs(t + 0.5 * h, v + 0.5 * h * k1);
    const CVec k3 = rhs(t + 0.5 * h, v + 0.5 * h * k2);
    const CVec k4 = rhs(t + h, v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return path;
}

}  // namespace fgbc
