#include "fgbc/gbc.hpp"

#include <chrono>
#include <random>

#include "fgbc/metrics.hpp"

namespace fgbc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* mode_name(VolumeModel::Mode m) {
  switch (m) {
    case VolumeModel::Mode::reference:
      return "reference";
    case VolumeModel::Mode::constant:
      return "constant";
    case VolumeModel::Mode::pointwise:
      return "pointwise";
  }
  return "?";
}

VolumeModel scenario_volume(const FinslerMetric& m, const Scenario& s) {
  return VolumeModel(m, scenario_rule(s), {s.step, false});
}

}  // namespace

bool within(double value, double target, double tol) {
  const double scale = target == 0.0 ? 1.0 : std::abs(target);
  return std::abs(value - target) <= tol * scale;
}

ZeroTable degree_table(const FinslerMetric& m, const HolomorphicField& X, const FieldZero& zero,
                       const std::vector<double>& eps, const VolumeModel& vol, SphereResolution res) {
  ZeroTable t;
  t.zero = zero;
  t.eps = eps;
  for (double e : eps) t.values.push_back(boundary_degree(m, X, zero, e, vol, res));
  t.extrapolated.value = extrapolate_eps(eps, t.values);
  t.extrapolated.error = extrapolation_error(eps, t.values);
  return t;
}

std::vector<ZeroTable> degree_tables(const Scenario& s) {
  const auto m = scenario_metric(s);
  const auto X = scenario_field(s);
  const VolumeModel vol = scenario_volume(*m, s);
  std::vector<ZeroTable> out;
  for (const auto& z : X->zeros()) out.push_back(degree_table(*m, *X, z, s.eps, vol, {s.boundary_eta, s.boundary_phi}));
  return out;
}

HopfResult hopf_check(const Scenario& s) { return hopf_check(scenario_manifold(s), *scenario_field(s)); }

GbcReport gbc_verify(const Scenario& s) {
  validate(s);
  GbcReport r;
  r.scenario = s.name;
  const Manifold M = scenario_manifold(s);
  const auto m = scenario_metric(s);
  const auto X = scenario_field(s);
  r.n = M.n;
  r.chi = M.chi;
  r.tolerance = s.tolerance;
  r.target = M.chi / reference_volume(M.n);
  r.hopf = hopf_check(M, *X);
  if (!r.hopf.ok) throw DegeneracyError("hopf check: " + r.hopf.message);
  const VolumeModel vol = scenario_volume(*m, s);
  r.volume_mode = mode_name(vol.mode());
  const NumericStep step = scenario_step(s);

  auto t0 = std::chrono::steady_clock::now();
  r.lhs_detail = integrate_complement(
      [&](const CVec& z, int chart) { return gbc_integrand(*m, *X, z, chart, vol, step); }, M, X->zeros(), s.eps,
      {s.mesh, s.error_estimate});
  r.lhs = {r.lhs_detail.extrapolated, r.lhs_detail.error};
  r.seconds_lhs = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  NeumaierSum total, err;
  for (const auto& z : X->zeros()) {
    r.zeros.push_back(degree_table(*m, *X, z, s.eps, vol, {s.boundary_eta, s.boundary_phi}));
    total.add(r.zeros.back().extrapolated.value);
    err.add(r.zeros.back().extrapolated.error);
  }
  r.rhs = {total.value(), err.value()};
  r.seconds_rhs = seconds_since(t0);

  r.stokes_gap = std::abs(r.lhs.value - r.rhs.value);
  r.stokes_consistent = r.stokes_gap <= r.lhs.error + r.rhs.error + 1e-10;
  r.lhs_ok = within(r.lhs.value, r.target, s.tolerance);
  r.rhs_ok = within(r.rhs.value, r.target, s.tolerance);
  r.passed = r.lhs_ok && r.rhs_ok;
  return r;
}

CorollaryReport riemann_surface_check(const Scenario& s) {
  validate(s);
  const Manifold M = scenario_manifold(s);
  if (M.n != 1) throw DomainError("the Riemann surface check needs n = 1");
  const auto m = scenario_metric(s);
  if (!m->flags().hermitian) throw DomainError("metric '" + m->name() + "' is not flagged Hermitian");
  const auto X = scenario_field(s);
  const VolumeModel vol = scenario_volume(*m, s);
  CorollaryReport r;
  r.scenario = s.name;
  r.chi = M.chi;
  r.tolerance = s.tolerance;
  auto integrand = [&](const CVec& z, int chart) {
    const JetSpace* space = JetSpace::get(2, 2);
    std::vector<Jet> zj{complex_variable(space, 0, 1, z(0))};
    const auto xj = X->components(chart, zj);
    const Jet L = log(m->squared_norm(chart, zj, xj));
    const cplx c = d_anti(d_holo(L, 0, 1), 0, 1).value();
    return ExteriorForm::monomial(1, {dzbar(0), dz(0)}, I * c / vol(z, chart));
  };
  const auto t0 = std::chrono::steady_clock::now();
  r.detail = integrate_complement(integrand, M, X->zeros(), s.eps, {s.mesh, s.error_estimate});
  r.value = {r.detail.extrapolated, r.detail.error};
  r.seconds = seconds_since(t0);
  r.passed = within(r.value.value, M.chi, s.tolerance);
  return r;
}

std::vector<std::pair<int, CVec>> sample_points(const Manifold& M, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<int, CVec>> out;
  for (int k = 0; k < count; ++k) {
    CVec z(M.n);
    int chart = 0;
    if (M.kind == ManifoldKind::projective) {
      chart = static_cast<int>(rng() % static_cast<std::uint64_t>(M.chart_count()));
      do {
        for (int i = 0; i < M.n; ++i) z(i) = std::polar(std::sqrt(unit(rng)), 2.0 * pi * unit(rng));
      } while (z.norm() < 0.25);
    } else {
      for (int i = 0; i < M.n; ++i) z(i) = cplx(unit(rng), unit(rng));
    }
    out.emplace_back(chart, z);
  }
  return out;
}

PointwiseReport pointwise_checks(const Scenario& s) {
  validate(s);
  const Manifold M = scenario_manifold(s);
  const auto m = scenario_metric(s);
  const auto X = scenario_field(s);
  const VolumeModel vol = scenario_volume(*m, s);
  PointwiseReport r;
  r.scenario = s.name;
  const auto pts = sample_points(M, s.samples, s.seed);
  r.samples = parallel_map<PointSample>(pts.size(), [&](std::size_t k) {
    PointSample p;
    p.chart = pts[k].first;
    p.z = pts[k].second;
    const auto a = transgression_residual(*m, *X, p.z, p.chart, vol, {s.step, false});
    const auto b = transgression_residual(*m, *X, p.z, p.chart, vol, {0.5 * s.step, false});
    p.lemma = a.lemma;
    p.lemma_half = b.lemma;
    p.identity = a.identity;
    p.identity_half = b.identity;
    p.xcn = transgression_point(*m, *X, p.z, p.chart).xcn.max_abs();
    p.correction = correction_integrand(*m, *X, p.z, p.chart, vol, scenario_step(s)).max_abs();
    return p;
  });
  constexpr double kFloor = 1e-9;
  r.quadratic_decay = true;
  for (const auto& p : r.samples) {
    r.max_lemma = std::max({r.max_lemma, p.lemma});
    r.max_identity = std::max({r.max_identity, p.identity});
    r.max_xcn = std::max(r.max_xcn, p.xcn);
    r.max_correction = std::max(r.max_correction, p.correction);
    auto decays = [&](double full, double half) { return half <= kFloor || full >= 3.0 * half; };
    if (!decays(p.lemma, p.lemma_half) || !decays(p.identity, p.identity_half)) r.quadratic_decay = false;
  }
  return r;
}

}  // namespace fgbc
