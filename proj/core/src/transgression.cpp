#include "fgbc/transgression.hpp"

namespace fgbc {

namespace {

const cplx kTwoPiI = I / (2.0 * pi);

FormMatrix scalar_layout(const CMat& natural) { return FormMatrix::scalars(natural.transpose()); }

CMat contract_matrix(const CVec& x, const FormMatrix& f) {
  CMat out(f.size(), f.size());
  for (int i = 0; i < f.size(); ++i)
    for (int k = 0; k < f.size(); ++k) {
      const ExteriorForm c = contract_base(x, f.at(i, k));
      out(k, i) = c.is_zero() ? cplx(0.0) : c.coefficient(0u);
    }
  return out;
}

double max_abs(const CMat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

void fill_theta(TransgressionPoint& tp) {
  const int n = tp.n;
  const ConnectionPoint& cp = tp.connection;
  const CVec v = (tp.mu + cp.N) * tp.x;  // (mu^l_s + N^l_s) X^s
  tp.theta_h = -tp.mu;
  tp.theta_v = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < n; ++s) {
        tp.theta_h(k, i) -= cp.gamma(k, i, s) * tp.x(s);
        tp.theta_v(k, i) -= cp.cartan(k, i, s) * v(s);
      }
  tp.theta = tp.theta_h + tp.theta_v;
}

void fill_omega(TransgressionPoint& tp) {
  const int n = tp.n;
  const ConnectionPoint& cp = tp.connection;
  tp.omega = ExteriorForm(n, 1);
  for (int j = 0; j < n; ++j) tp.omega += ExteriorForm::covector(n, dz(j), cp.Gi(j) / cp.G);
  // total dzbar derivatives along the section
  const CMat mubar = tp.mu.conjugate();
  const CMat dGi = cp.Gi_zbar + cp.g * mubar;  // (j, t)
  CVec dG(n);
  for (int t = 0; t < n; ++t) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += tp.x(i) * cp.Gi_zbar(i, t) + std::conj(cp.Gi(i)) * mubar(i, t);
    dG(t) = s;
  }
  tp.dbar_omega = ExteriorForm(n, 2);
  for (int t = 0; t < n; ++t)
    for (int j = 0; j < n; ++j) {
      const cplx c = dGi(j, t) / cp.G - cp.Gi(j) * dG(t) / (cp.G * cp.G);
      tp.dbar_omega += ExteriorForm::monomial(n, {dzbar(t), dz(j)}, c);
    }
}

}  // namespace

ExteriorForm TransgressionPoint::psi_total() const {
  ExteriorForm s(n, 2 * n - 1);
  for (const auto& p : psi) s += p;
  return s;
}

TransgressionPoint transgression_point(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                                       TransgressionLevel level) {
  if (X.dim() != m.dim()) throw DomainError("field and metric dimensions differ");
  TransgressionPoint tp;
  tp.n = m.dim();
  tp.chart = chart;
  tp.level = level;
  tp.z = z;
  tp.x = X.value(z, chart);
  if (tp.x.norm() == 0.0) throw PoleError("transgression forms are singular at a zero of " + X.name() + " at " + format_point(z));
  tp.mu = X.jacobian(z, chart);
  tp.connection = connection_point(
      m, z, tp.x, level == TransgressionLevel::full ? ConnectionLevel::curvature : ConnectionLevel::rund, chart);
  const int n = tp.n;
  fill_theta(tp);
  fill_omega(tp);

  const ExteriorForm base = wedge(tp.omega, power(tp.dbar_omega, n - 1));
  const cplx scale = std::pow(kTwoPiI, n);
  tp.lambda2 = (scale * tp.theta_h.determinant()) * base;
  tp.lambda1 = (scale * (tp.theta.determinant() - tp.theta_h.determinant())) * base;

  if (level == TransgressionLevel::full) {
    const FormMatrix omega = tp.connection.curvature_form();
    tp.pulled_curvature = omega.map([&](const ExteriorForm& e) { return pullback_section(e, tp.mu, tp.connection.N); });
    const FormMatrix a = kTwoPiI * tp.pulled_curvature;
    const FormMatrix b = kTwoPiI * scalar_layout(tp.theta);
    const auto dj = det_poly(a, b);
    for (int j = 0; j < n; ++j) tp.psi.push_back(wedge(wedge(tp.omega, power(tp.dbar_omega, n - j - 1)), dj[static_cast<std::size_t>(j)]));
    tp.xcn = dj[static_cast<std::size_t>(n)];
  }
  return tp;
}

std::pair<ExteriorForm, ExteriorForm> omega_X(const FinslerMetric& m, const HolomorphicField& X, const CVec& z,
                                              int chart) {
  const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::degree);
  return {tp.omega, tp.dbar_omega};
}

ThetaSplit theta(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart) {
  const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::degree);
  return {tp.theta, tp.theta_h, tp.theta_v};
}

CMat theta_from_forms(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart) {
  const CVec x = X.value(z, chart);
  const CMat mu = X.jacobian(z, chart);
  const auto cp = connection_point(m, z, x, ConnectionLevel::rund, chart);
  const FormMatrix pulled = cp.connection_form().map([&](const ExteriorForm& e) { return pullback_section(e, mu, cp.N); });
  return -contract_matrix(x, pulled) - mu;
}

cplx horizontal_degree_ratio(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart) {
  const auto t = theta(m, X, z, chart);
  return t.horizontal.determinant() / X.jacobian(z, chart).determinant();
}

SphereRule integrand_sphere_rule(int n) { return n == 1 ? SphereRule::product(1, 0, 64) : SphereRule::product(n, 4, 8); }

VolumeModel::VolumeModel(const FinslerMetric& m, SphereRule rule, NumericStep step, bool force_pointwise)
    : m_(m), step_(step), cache_(std::make_unique<VolumeCache>(m, std::move(rule))) {
  if (cache_->rule().dim() != m.dim()) throw DomainError("sphere rule dimension does not match the metric");
  const auto f = m.flags();
  if (force_pointwise) {
    mode_ = Mode::pointwise;
  } else if (f.hermitian) {
    mode_ = Mode::reference;
    constant_ = reference_volume(m.dim());
  } else if (f.berwald || f.locally_minkowski) {
    mode_ = Mode::constant;
    constant_ = volume_value(m, CVec::Zero(m.dim()), SphereRule::standard(m.dim()));
  } else {
    mode_ = Mode::pointwise;
  }
}

double VolumeModel::operator()(const CVec& z, int chart) const {
  if (mode_ != Mode::pointwise) return constant_;
  return (*cache_)(z, chart);
}

ExteriorForm VolumeModel::dlog(const CVec& z, int chart) const {
  const int n = static_cast<int>(z.size());
  if (mode_ != Mode::pointwise) return ExteriorForm(n, 1);
  return log_volume_differential(m_, z, cache_->rule(), chart, step_);
}

ExteriorForm correction_integrand(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                                  const VolumeModel& vol, NumericStep step) {
  const int n = m.dim();
  const auto level = n > 1 ? TransgressionLevel::full : TransgressionLevel::degree;
  auto exact_part = [&](const CVec& p) {
    const auto tp = transgression_point(m, X, p, chart, level);
    ExteriorForm s = real_part(tp.lambda1);
    for (int j = 1; j < n; ++j) s += real_part(tp.psi[static_cast<std::size_t>(j)]);
    return s;
  };
  ExteriorForm e = numeric_d(exact_part, z, step);
  if (vol.mode() == VolumeModel::Mode::pointwise) {
    const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::degree);
    e += wedge(vol.dlog(z, chart), real_part(tp.lambda2));
  }
  return e;
}

ExteriorForm gbc_integrand(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                           const VolumeModel& vol, NumericStep step) {
  const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::full);
  return (1.0 / vol(z, chart)) * (tp.xcn + correction_integrand(m, X, z, chart, vol, step));
}

ExteriorForm degree_integrand(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                              const VolumeModel& vol) {
  const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::degree);
  return (1.0 / vol(z, chart)) * real_part(tp.lambda2);
}

TransgressionResidual transgression_residual(const FinslerMetric& m, const HolomorphicField& X, const CVec& z,
                                             int chart, const VolumeModel& vol, NumericStep step) {
  TransgressionResidual r;
  const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::full);
  const ExteriorForm dpsi = numeric_d(
      [&](const CVec& p) { return transgression_point(m, X, p, chart, TransgressionLevel::full).psi_total(); }, z, step);
  r.lemma = (tp.xcn + dpsi).max_abs();
  const ExteriorForm lhs = gbc_integrand(m, X, z, chart, vol, step);
  const ExteriorForm d2 = numeric_d([&](const CVec& p) { return degree_integrand(m, X, p, chart, vol); }, z, step);
  r.identity = (lhs + d2).max_abs();
  return r;
}

double theta_dbar_residual(const FinslerMetric& m, const HolomorphicField& X, const CVec& z, int chart,
                           NumericStep step) {
  const auto tp = transgression_point(m, X, z, chart, TransgressionLevel::full);
  const int n = tp.n;
  double r = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const auto parts = numeric_d_parts(
          [&](const CVec& p) { return ExteriorForm::scalar(n, theta(m, X, p, chart).theta(k, i)); }, z, step);
      const ExteriorForm rhs = contract_base(tp.x, tp.pulled_curvature.at(i, k));
      r = std::max(r, (parts.dbar - rhs).max_abs());
    }
  return r;
}

TensorialityResult tensoriality_check(const FinslerMetric& m, const HolomorphicField& X, const FinslerMetric& m2,
                                      const HolomorphicField& X2, const ChartTransition& t, const CVec& z) {
  const CVec z2 = t.map(z);
  const CMat J = t.jacobian(z);
  const CMat Jinv = J.inverse();
  const auto a = theta(m, X, z, t.from);
  const auto b = theta(m2, X2, z2, t.to);
  TensorialityResult r;
  r.theta = max_abs(b.theta - J * a.theta * Jinv);
  r.mu = max_abs(X2.jacobian(z2, t.to) - J * X.jacobian(z, t.from) * Jinv);
  return r;
}

TensorialityResult tensoriality_check(const FinslerMetric& m, const HolomorphicField& X, const ChartTransition& t,
                                      const CVec& z) {
  return tensoriality_check(m, X, m, X, t, z);
}

double boundary_degree(const FinslerMetric& m, const HolomorphicField& X, const FieldZero& zero, double eps,
                       const VolumeModel& vol, SphereResolution res) {
  if (!(eps > 0.0)) throw DomainError("excision radius must be positive");
  for (const auto& other : X.zeros()) {
    if (other.chart != zero.chart || (other.point - zero.point).norm() == 0.0) continue;
    if ((other.point - zero.point).norm() <= eps)
      throw DomainError("ball of radius " + std::to_string(eps) + " around " + format_point(zero.point) +
                        " contains another zero");
  }
  const NodeSet nodes = sphere_nodes(zero.point, eps, res.n_eta, res.n_phi);
  return integrate_nodes([&](const CVec& p) { return degree_integrand(m, X, p, zero.chart, vol); }, nodes).real();
}

}  // namespace fgbc
