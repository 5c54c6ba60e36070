#include "fgbc/checks.hpp"

#include <random>

namespace fgbc {

std::vector<MetricSample> metric_samples(const FinslerMetric& m, int count, std::uint64_t seed, int charts) {
  const int n = m.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<MetricSample> out;
  while (static_cast<int>(out.size()) < count) {
    MetricSample s;
    s.chart = static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, charts)));
    s.z = CVec(n);
    s.xi = CVec(n);
    for (int i = 0; i < n; ++i) s.z(i) = std::polar(std::sqrt(unit(rng)), 2.0 * pi * unit(rng));
    for (int i = 0; i < n; ++i) s.xi(i) = cplx(gauss(rng), gauss(rng));
    s.xi /= s.xi.norm();
    if (m.on_degeneracy_locus(s.xi, 1e-3)) continue;
    out.push_back(std::move(s));
  }
  return out;
}

MetricCheck check_metric(const FinslerMetric& m, int samples, std::uint64_t seed, int charts, double tolerance) {
  MetricCheck c;
  c.metric = m.name();
  c.tolerance = tolerance;
  const auto pts = metric_samples(m, samples, seed, charts);
  c.samples = static_cast<int>(pts.size());
  const auto reports = parallel_map<std::array<double, kHomogeneityIdentities>>(
      pts.size(), [&](std::size_t k) { return homogeneity_report(m, pts[k].z, pts[k].xi, pts[k].chart); });
  const auto cartans =
      parallel_map<double>(pts.size(), [&](std::size_t k) { return cartan_norm(m, pts[k].z, pts[k].xi, pts[k].chart); });
  c.cartan_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (int i = 0; i < kHomogeneityIdentities; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      c.max_residual[idx] = std::max(c.max_residual[idx], reports[k][idx]);
      c.worst = std::max(c.worst, reports[k][idx]);
    }
    c.cartan_min = std::min(c.cartan_min, cartans[k]);
    c.cartan_max = std::max(c.cartan_max, cartans[k]);
  }
  c.scan = pseudoconvexity_scan(m, pts.empty() ? CVec::Zero(m.dim()) : pts[0].z, samples, seed + 1,
                                pts.empty() ? 0 : pts[0].chart);
  c.passed = c.worst <= tolerance && c.scan.min_eigenvalue > 0.0;
  return c;
}

StructureCheck check_structure(const FinslerMetric& m, int samples, std::uint64_t seed, int charts, double tolerance) {
  StructureCheck c;
  c.metric = m.name();
  c.tolerance = tolerance;
  const auto pts = metric_samples(m, samples, seed, charts);
  c.samples = static_cast<int>(pts.size());
  const auto res = parallel_map<StructureResiduals>(
      pts.size(), [&](std::size_t k) { return structure_residuals(m, pts[k].z, pts[k].xi, pts[k].chart); });
  for (const auto& r : res) {
    c.max_del = std::max(c.max_del, r.del_minus_square);
    c.max_dbar = std::max(c.max_dbar, r.omega_minus_dbar);
  }
  c.passed = c.max_del <= tolerance && c.max_dbar <= tolerance;
  return c;
}

std::vector<VolumeSample> volume_sweep(const FinslerMetric& m, int points, const SphereRule& rule) {
  if (points < 1) throw DomainError("volume sweep needs at least one point");
  const int n = m.dim();
  std::vector<VolumeSample> out;
  for (int k = 0; k < points; ++k) {
    VolumeSample s;
    s.z = CVec::Constant(n, cplx(0.0, 0.3));
    s.z(0) = points == 1 ? 0.0 : -0.9 + 1.8 * k / (points - 1);
    s.value = volume(m, s.z, rule, 0);
    out.push_back(std::move(s));
  }
  return out;
}

double volume_spread(const std::vector<VolumeSample>& sweep) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : sweep) {
    lo = std::min(lo, s.value.vol);
    hi = std::max(hi, s.value.vol);
  }
  return sweep.empty() ? 0.0 : (hi - lo) / lo;
}

}  // namespace fgbc
