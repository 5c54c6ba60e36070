#include "fgbc/volume.hpp"

#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

namespace fgbc {

namespace {

cplx branch(int n) { return std::exp(cplx(0.0, -pi * n * n / 2.0)); }

// Re(e^{-i pi n^2/2} beta) at xi, fiber labels
ExteriorForm beta_real(const CVec& xi) {
  const int n = static_cast<int>(xi.size());
  ExteriorForm b(n, 2 * n - 1);
  for (int i = 0; i < n; ++i) {
    std::vector<CovectorLabel> labels;
    for (int j = 0; j < n; ++j)
      if (j != i) labels.push_back(dxibar(j));
    for (int j = 0; j < n; ++j) labels.push_back(dxi(j));
    b += ExteriorForm::monomial(n, labels, ((i % 2 == 0) ? 1.0 : -1.0) * std::conj(xi(i)));
  }
  return real_part(branch(n) * b);
}

}  // namespace

SphereRule SphereRule::product(int n, int n_eta, int n_phi) {
  if (n < 1 || n > 2) throw DomainError("sphere rules support n = 1, 2");
  if (n_phi < 2 || (n == 2 && n_eta < 1)) throw DomainError("sphere rule resolution too small");
  SphereRule r;
  r.n_ = n;
  r.n_eta_ = n == 1 ? 0 : n_eta;
  r.n_phi_ = n_phi;
  r.nodes_ = sphere_nodes(CVec::Zero(n), 1.0, n_eta, n_phi);
  std::ostringstream os;
  if (n == 1) {
    os << "trapezoid(" << n_phi << ")";
  } else {
    os << "hopf(" << n_eta << "x" << n_phi << "x" << n_phi << ")";
  }
  r.descriptor_ = os.str();
  r.finish();
  return r;
}

SphereRule SphereRule::standard(int n) { return n == 1 ? product(1, 0, 256) : product(n, 32, 64); }

SphereRule SphereRule::monte_carlo(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || n > 2) throw DomainError("sphere rules support n = 1, 2");
  if (count < 2) throw DomainError("Monte Carlo rule needs at least two samples");
  SphereRule r;
  r.n_ = n;
  r.mc_ = true;
  r.seed_ = seed;
  r.n_phi_ = static_cast<int>(count);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int d = 2 * n;
  const double w = reference_volume(n) / static_cast<double>(count);
  for (std::size_t s = 0; s < count; ++s) {
    RVec u(d);
    for (int k = 0; k < d; ++k) u(k) = gauss(rng);
    u /= u.norm();
    // orthonormal complement by Gram-Schmidt, skipping the axis closest to u
    int skip = 0;
    u.cwiseAbs().maxCoeff(&skip);
    std::vector<RVec> frame{u};
    for (int k = 0; k < d; ++k) {
      if (k == skip) continue;
      RVec e = RVec::Zero(d);
      e(k) = 1.0;
      for (const auto& f : frame) e -= e.dot(f) * f;
      frame.push_back(e / e.norm());
    }
    RMat m(d, d);
    for (int c = 0; c < d; ++c) m.col(c) = frame[static_cast<std::size_t>(c)];
    if (m.determinant() < 0.0) frame.back() = -frame.back();
    auto to_complex = [n](const RVec& v) {
      CVec c(n);
      for (int i = 0; i < n; ++i) c(i) = cplx(v(2 * i), v(2 * i + 1));
      return c;
    };
    FormNode node{to_complex(u), {}, w};
    for (std::size_t c = 1; c < frame.size(); ++c) node.tangents.push_back(to_complex(frame[c]));
    r.nodes_.push_back(std::move(node));
  }
  std::ostringstream os;
  os << "monte-carlo(" << count << ", seed " << seed << ")";
  r.descriptor_ = os.str();
  r.finish();
  return r;
}

void SphereRule::finish() {
  density_.clear();
  for (const auto& node : nodes_) {
    std::vector<TangentVector> frame;
    for (const auto& t : node.tangents) frame.push_back(TangentVector::real_fiber(t));
    density_.push_back(node.weight * evaluate(beta_real(node.point), frame).real());
  }
}

SphereRule SphereRule::coarser() const {
  if (mc_) return monte_carlo(n_, nodes_.size() / 2, seed_ + 1);
  return product(n_, std::max(1, n_eta_ / 2), std::max(2, n_phi_ / 2));
}

double SphereRule::euclidean_area() const {
  NeumaierSum s;
  for (const auto& node : nodes_) {
    std::vector<CVec> frame{node.point};
    frame.insert(frame.end(), node.tangents.begin(), node.tangents.end());
    s.add(node.weight * real_determinant(frame));
  }
  return s.value();
}

double sigma_prefactor(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  const CMat g = fiber_hessian(m, z, xi, chart);
  const double G = m.value(z, xi, chart);
  const int n = m.dim();
  return g.determinant().real() / (std::pow(2.0, n - 1) * std::pow(G, n));
}

ExteriorForm sigma_density(const FinslerMetric& m, const CVec& z, const CVec& xi, int chart) {
  if (xi.norm() == 0.0) throw DomainError("sigma density at the zero section");
  if (m.on_degeneracy_locus(xi, 0.0)) throw DegeneracyError("sigma density on the degeneracy locus of " + m.name());
  return sigma_prefactor(m, z, xi, chart) * beta_real(xi);
}

double volume_value(const FinslerMetric& m, const CVec& z, const SphereRule& rule, int chart) {
  if (rule.dim() != m.dim()) throw DomainError("sphere rule dimension does not match the metric");
  const auto& nodes = rule.nodes();
  const auto& dens = rule.density();
  int flagged = 0;
  for (const auto& node : nodes)
    if (m.on_degeneracy_locus(node.point, 1e-12)) ++flagged;
  if (flagged > 0)
    throw DegeneracyError(std::to_string(flagged) + " sphere nodes lie on the degeneracy locus of " + m.name());
  const auto vals = parallel_map<double>(
      nodes.size(), [&](std::size_t k) { return dens[k] * sigma_prefactor(m, z, nodes[k].point, chart); });
  return compensated_sum(vals);
}

VolumeValue volume(const FinslerMetric& m, const CVec& z, const SphereRule& rule, int chart) {
  VolumeValue v;
  v.rule = rule.descriptor();
  if (rule.is_monte_carlo()) {
    const auto& nodes = rule.nodes();
    const auto vals = parallel_map<double>(nodes.size(), [&](std::size_t k) {
      return rule.density()[k] * sigma_prefactor(m, z, nodes[k].point, chart);
    });
    NeumaierSum s, s2;
    for (double x : vals) {
      s.add(x);
      s2.add(x * x);
    }
    const double N = static_cast<double>(vals.size());
    v.vol = s.value();
    const double mean = v.vol / N;
    v.error = std::sqrt(std::max(0.0, s2.value() / N - mean * mean) / N) * N;
  } else {
    v.vol = volume_value(m, z, rule, chart);
    v.error = std::abs(v.vol - volume_value(m, z, rule.coarser(), chart));
  }
  if (!(v.vol > 0.0)) throw DomainError("non-positive indicatrix volume for " + m.name());
  return v;
}

double reference_volume(int n) {
  if (n < 1) throw DomainError("reference volume needs n >= 1");
  return 2.0 * std::pow(pi, n) / std::tgamma(static_cast<double>(n));
}

ExteriorForm log_volume_differential(const FinslerMetric& m, const CVec& z, const SphereRule& rule, int chart,
                                     NumericStep step) {
  auto f = [&](const CVec& p) { return cplx(std::log(volume_value(m, p, rule, chart))); };
  auto [dh, da] = numeric_wirtinger(f, z, step);
  const int n = static_cast<int>(z.size());
  ExteriorForm out(n, 1);
  for (int i = 0; i < n; ++i) {
    out += ExteriorForm::covector(n, dz(i), dh(i));
    out += ExteriorForm::covector(n, dzbar(i), da(i));
  }
  return out;
}

double VolumeCache::operator()(const CVec& z, int chart) {
  std::vector<double> key{static_cast<double>(chart)};
  for (int i = 0; i < z.size(); ++i) {
    key.push_back(z(i).real());
    key.push_back(z(i).imag());
  }
  {
    std::shared_lock lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
  }
  const double v = volume_value(m_, z, rule_, chart);
  std::unique_lock lock(mu_);
  return table_.emplace(std::move(key), v).first->second;
}

std::size_t VolumeCache::size() const {
  std::shared_lock lock(mu_);
  return table_.size();
}

}  // namespace fgbc
