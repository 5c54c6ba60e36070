#include "fgbc/metric.hpp"

#include <random>
#include <sstream>

namespace fgbc {

bool FinslerMetric::on_degeneracy_locus(const CVec&, double) const { return false; }

double FinslerMetric::value(const CVec& z, const CVec& xi, int chart) const {
  std::vector<Jet> zj, xj;
  for (int i = 0; i < z.size(); ++i) zj.emplace_back(z(i));
  for (int i = 0; i < xi.size(); ++i) xj.emplace_back(xi(i));
  return squared_norm(chart, zj, xj).value().real();
}

namespace {

double min_hermitian_eigenvalue(const CMat& g) {
  const CMat h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void check_point(const FinslerMetric& m, const CVec& z, const CVec& xi) {
  if (z.size() != m.dim() || xi.size() != m.dim())
    throw DomainError("point dimension does not match metric " + m.name());
}

}  // namespace

CMat fiber_hessian(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  check_point(m, z, xi);
  const JetPoint p = JetPoint::seed_fiber(z, xi, 2);
  const Jet G = m.squared_norm(chart, p.z(), p.xi());
  const int n = m.dim();
  CMat g(n, n);
  for (int i = 0; i < n; ++i) {
    const Jet gi = p.holo(G, xivar(i));
    for (int j = 0; j < n; ++j) g(i, j) = p.anti(gi, xivar(j)).value();
  }
  return g;
}

MetricTensors metric_tensors(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  check_point(m, z, xi);
  const int n = m.dim();
  const JetPoint p = JetPoint::seed_fiber(z, xi, 3);
  const Jet G = m.squared_norm(chart, p.z(), p.xi());
  MetricTensors t;
  t.G = G.value().real();
  t.Gi = CVec(n);
  t.Gij = CMat(n, n);
  t.Gaa = CMat(n, n);
  t.g = CMat(n, n);
  t.Gijk = Tensor3(n);
  t.Gijkb = Tensor3(n);
  t.g3 = Tensor3(n);
  t.cartan = Tensor3(n);
  for (int i = 0; i < n; ++i) {
    const Jet gi = p.holo(G, xivar(i));
    const Jet gib = p.anti(G, xivar(i));
    t.Gi(i) = gi.value();
    for (int j = 0; j < n; ++j) {
      const Jet gij = p.holo(gi, xivar(j));
      const Jet gijb = p.anti(gi, xivar(j));
      t.Gij(i, j) = gij.value();
      t.g(i, j) = gijb.value();
      t.Gaa(i, j) = p.anti(gib, xivar(j)).value();
      for (int k = 0; k < n; ++k) {
        t.Gijk(i, j, k) = p.holo(gij, xivar(k)).value();
        t.Gijkb(i, j, k) = p.anti(gij, xivar(k)).value();
        t.g3(i, j, k) = p.holo(gijb, xivar(k)).value();
      }
    }
  }
  const double scale = std::pow(std::max(t.g.cwiseAbs().maxCoeff(), 1e-300), n);
  const cplx d = t.g.determinant();
  if (!(std::abs(d) >= 1e-12 * scale)) {
    std::ostringstream os;
    os << "fiber Hessian of " << m.name() << " is singular at z=" << format_point(z) << " xi=" << format_point(xi)
       << " (|det|=" << std::abs(d) << ")";
    throw DegeneracyError(os.str());
  }
  t.ginv = t.g.transpose().partialPivLu().inverse();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int l = 0; l < n; ++l) s += t.ginv(k, l) * t.g3(i, l, j);
        t.cartan(k, i, j) = s;
      }
  t.min_eigenvalue = min_hermitian_eigenvalue(t.g);
  return t;
}

const std::array<const char*, kHomogeneityIdentities>& homogeneity_labels() {
  static const std::array<const char*, kHomogeneityIdentities> labels = {
      "conj(G_ij~)=G_ji~",   "G^ij~ G_kj~=delta",  "G^ij~ G_ik~=delta", "G=G_ij~ xi xi~",
      "G_i xi=G",            "G_ij~ xi~=G_i",      "G_ij xi=0",         "G_i~j~ xi~=0",
      "G_ijk xi=-G_ij",      "G_ijk~ xi~=G_ij",    "G_ij~k xi=0"};
  return labels;
}

std::array<double, kHomogeneityIdentities> homogeneity_report(const FinslerMetric& m, const CVec& z, const CVec& xi,
                                                              int chart) {
  const MetricTensors t = metric_tensors(m, z, xi, chart);
  const int n = m.dim();
  std::array<double, kHomogeneityIdentities> r{};
  auto upd = [&](int k, cplx v) { r[static_cast<std::size_t>(k)] = std::max(r[static_cast<std::size_t>(k)], std::abs(v)); };
  cplx G_from_g = 0.0, Gi_xi = 0.0;
  for (int i = 0; i < n; ++i) {
    Gi_xi += t.Gi(i) * xi(i);
    cplx gx = 0.0, gij_x = 0.0, gaa_x = 0.0;
    for (int j = 0; j < n; ++j) {
      upd(0, std::conj(t.g(i, j)) - t.g(j, i));
      cplx a = 0.0, b = 0.0;
      for (int l = 0; l < n; ++l) {
        a += t.ginv(i, l) * t.g(j, l);
        b += t.ginv(l, i) * t.g(l, j);
      }
      upd(1, a - (i == j ? 1.0 : 0.0));
      upd(2, b - (i == j ? 1.0 : 0.0));
      G_from_g += t.g(i, j) * xi(i) * std::conj(xi(j));
      gx += t.g(i, j) * std::conj(xi(j));
      gij_x += t.Gij(i, j) * xi(j);
      gaa_x += t.Gaa(i, j) * std::conj(xi(j));
      cplx s8 = 0.0, s9 = 0.0, s10 = 0.0;
      for (int k = 0; k < n; ++k) {
        s8 += t.Gijk(i, j, k) * xi(k);
        s9 += t.Gijkb(i, j, k) * std::conj(xi(k));
        s10 += t.g3(i, j, k) * xi(k);
      }
      upd(8, s8 + t.Gij(i, j));
      upd(9, s9 - t.Gij(i, j));
      upd(10, s10);
    }
    upd(5, gx - t.Gi(i));
    upd(6, gij_x);
    upd(7, gaa_x);
  }
  upd(3, t.G - G_from_g);
  upd(4, Gi_xi - t.G);
  return r;
}

double cartan_norm(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  return metric_tensors(m, z, xi, chart).cartan.max_abs();
}

PseudoconvexityScan pseudoconvexity_scan(const FinslerMetric& m, const CVec& z, int samples, std::uint64_t seed,
                                         int chart, const std::vector<CVec>& extra_directions) {
  const int n = m.dim();
  PseudoconvexityScan out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  auto consider = [&](const CVec& xi) {
    const double e = min_hermitian_eigenvalue(fiber_hessian(m, z, xi, chart));
    ++out.samples;
    if (e < out.min_eigenvalue) {
      out.min_eigenvalue = e;
      out.worst_xi = xi;
    }
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < samples; ++s) {
    CVec xi(n);
    for (int i = 0; i < n; ++i) xi(i) = cplx(gauss(rng), gauss(rng));
    xi /= xi.norm();
    if (m.on_degeneracy_locus(xi, 1e-6)) {
      ++out.skipped_on_locus;
      continue;
    }
    consider(xi);
  }
  for (const auto& xi : extra_directions) {
    if (m.on_degeneracy_locus(xi, 1e-6)) out.locus_warning = true;
    consider(xi / xi.norm());
  }
  return out;
}

}  // namespace fgbc
