#include "fgbc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fgbc {

namespace {

const Rule1D& reference_gauss(int n) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule1D r;
  // legendre_p_zeros returns the nonnegative roots in increasing order
  const auto roots = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  for (auto it2 = roots.rbegin(); it2 != roots.rend(); ++it2)
    if (*it2 > 0.0) x.push_back(-*it2);
  for (double v : roots) x.push_back(v);
  for (double t : x) {
    const double dp = boost::math::legendre_p_prime(n, t);
    r.x.push_back(t);
    r.w.push_back(2.0 / ((1.0 - t * t) * dp * dp));
  }
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  const Rule1D& ref = reference_gauss(n);
  Rule1D r;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < ref.x.size(); ++k) {
    r.x.push_back(mid + half * ref.x[k]);
    r.w.push_back(half * ref.w[k]);
  }
  return r;
}

Rule1D periodic_trapezoid(int n, double a, double b, double offset) {
  if (n < 1) throw DomainError("trapezoid node count must be positive");
  Rule1D r;
  const double h = (b - a) / n;
  for (int k = 0; k < n; ++k) {
    r.x.push_back(a + (k + offset) * h);
    r.w.push_back(h);
  }
  return r;
}

void NeumaierSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

cplx compensated_sum(std::span<const cplx> xs) {
  ComplexNeumaierSum s;
  for (cplx x : xs) s.add(x);
  return s.value();
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

double real_determinant(const std::vector<CVec>& columns) {
  const int d = static_cast<int>(columns.size());
  RMat m(d, d);
  for (int c = 0; c < d; ++c) {
    if (2 * columns[static_cast<std::size_t>(c)].size() != d) throw DomainError("real determinant needs a square frame");
    for (int i = 0; i < columns[static_cast<std::size_t>(c)].size(); ++i) {
      m(2 * i, c) = columns[static_cast<std::size_t>(c)](i).real();
      m(2 * i + 1, c) = columns[static_cast<std::size_t>(c)](i).imag();
    }
  }
  return m.determinant();
}

namespace {

void push_oriented(NodeSet& out, CVec p, std::vector<CVec> t, double w, const CVec* normal = nullptr) {
  std::vector<CVec> frame;
  if (normal) frame.push_back(*normal);
  frame.insert(frame.end(), t.begin(), t.end());
  const double s = real_determinant(frame) >= 0.0 ? 1.0 : -1.0;
  out.push_back({std::move(p), std::move(t), w * s});
}

// Hopf parametrization u = (cos eta e^{i phi1}, sin eta e^{i phi2}) with
// tangents d/d eta, d/d phi1, d/d phi2 (unscaled).
void hopf_frame(double eta, double p1, double p2, CVec& u, std::vector<CVec>& t) {
  const cplx e1 = std::polar(1.0, p1), e2 = std::polar(1.0, p2);
  u = CVec(2);
  u << std::cos(eta) * e1, std::sin(eta) * e2;
  CVec a(2), b(2), c(2);
  a << -std::sin(eta) * e1, std::cos(eta) * e2;
  b << I * std::cos(eta) * e1, 0.0;
  c << 0.0, I * std::sin(eta) * e2;
  t = {a, b, c};
}

}  // namespace

NodeSet disk_nodes(cplx center, double r_in, double r_out, int n_r, int n_theta) {
  if (!(r_out > r_in) || r_in < 0.0) throw DomainError("disk radii must satisfy 0 <= r_in < r_out");
  NodeSet out;
  const Rule1D rr = gauss_legendre(n_r, r_in, r_out);
  const Rule1D th = periodic_trapezoid(n_theta, 0.0, 2.0 * pi);
  for (std::size_t a = 0; a < rr.x.size(); ++a)
    for (std::size_t b = 0; b < th.x.size(); ++b) {
      const cplx e = std::polar(1.0, th.x[b]);
      CVec p(1), tr(1), tt(1);
      p << center + rr.x[a] * e;
      tr << e;
      tt << I * rr.x[a] * e;
      push_oriented(out, p, {tr, tt}, rr.w[a] * th.w[b]);
    }
  return out;
}

NodeSet torus_nodes(int n, int m) {
  if (n < 1 || n > 2 || m < 1) throw DomainError("torus rule supports n = 1, 2 and m >= 1");
  NodeSet out;
  const Rule1D r = periodic_trapezoid(m, 0.0, 1.0);
  std::vector<CVec> frame;
  for (int i = 0; i < n; ++i)
    for (cplx dir : {cplx(1.0), I}) {
      CVec e = CVec::Zero(n);
      e(i) = dir;
      frame.push_back(e);
    }
  const double w = std::pow(1.0 / m, 2 * n);
  if (n == 1) {
    for (double x : r.x)
      for (double y : r.x) {
        CVec p(1);
        p << cplx(x, y);
        push_oriented(out, p, frame, w);
      }
  } else {
    for (double x1 : r.x)
      for (double y1 : r.x)
        for (double x2 : r.x)
          for (double y2 : r.x) {
            CVec p(2);
            p << cplx(x1, y1), cplx(x2, y2);
            push_oriented(out, p, frame, w);
          }
  }
  return out;
}

NodeSet polydisk_nodes(const CVec& center, double r_in, double r_out, int n_r, int n_theta) {
  if (center.size() != 2) throw DomainError("polydisk rule is for n = 2");
  const NodeSet d1 = disk_nodes(center(0), r_in, r_out, n_r, n_theta);
  const NodeSet d2 = disk_nodes(center(1), r_in, r_out, n_r, n_theta);
  NodeSet out;
  for (const auto& a : d1)
    for (const auto& b : d2) {
      CVec p(2);
      p << a.point(0), b.point(0);
      auto lift = [](const CVec& v, int slot) {
        CVec e = CVec::Zero(2);
        e(slot) = v(0);
        return e;
      };
      push_oriented(out, p, {lift(a.tangents[0], 0), lift(a.tangents[1], 0), lift(b.tangents[0], 1), lift(b.tangents[1], 1)},
                    std::abs(a.weight * b.weight));
    }
  return out;
}

NodeSet shell_nodes(const CVec& center, double r_in, double r_out, int n_r, int n_eta, int n_phi) {
  if (center.size() == 1) return disk_nodes(center(0), r_in, r_out, n_r, n_phi);
  if (center.size() != 2) throw DomainError("shell rule supports n = 1, 2");
  if (!(r_out > r_in) || r_in < 0.0) throw DomainError("shell radii must satisfy 0 <= r_in < r_out");
  NodeSet out;
  const Rule1D rr = gauss_legendre(n_r, r_in, r_out);
  const Rule1D et = gauss_legendre(n_eta, 0.0, pi / 2);
  const Rule1D ph = periodic_trapezoid(n_phi, 0.0, 2.0 * pi);
  CVec u;
  std::vector<CVec> t;
  for (std::size_t e = 0; e < et.x.size(); ++e)
    for (std::size_t a = 0; a < ph.x.size(); ++a)
      for (std::size_t b = 0; b < ph.x.size(); ++b) {
        hopf_frame(et.x[e], ph.x[a], ph.x[b], u, t);
        for (std::size_t k = 0; k < rr.x.size(); ++k) {
          const double rho = rr.x[k];
          push_oriented(out, center + rho * u, {u, rho * t[0], rho * t[1], rho * t[2]},
                        rr.w[k] * et.w[e] * ph.w[a] * ph.w[b]);
        }
      }
  return out;
}

NodeSet polydisk_minus_ball_nodes(int n, double r_in, int n_r, int n_eta, int n_phi) {
  if (!(r_in > 0.0 && r_in < 1.0)) throw DomainError("excision radius must lie in (0, 1)");
  if (n == 1) return disk_nodes(0.0, r_in, 1.0, n_r, n_phi);
  if (n != 2) throw DomainError("polydisk complement supports n = 1, 2");
  NodeSet out;
  const Rule1D ph = periodic_trapezoid(n_phi, 0.0, 2.0 * pi);
  CVec u;
  std::vector<CVec> t;
  for (auto [lo, hi] : {std::pair{0.0, pi / 4}, std::pair{pi / 4, pi / 2}}) {
    const Rule1D et = gauss_legendre(n_eta, lo, hi);
    for (std::size_t e = 0; e < et.x.size(); ++e) {
      const double eta = et.x[e];
      const double rmax = std::min(1.0 / std::cos(eta), 1.0 / std::sin(eta));
      const Rule1D rr = gauss_legendre(n_r, r_in, rmax);
      for (std::size_t a = 0; a < ph.x.size(); ++a)
        for (std::size_t b = 0; b < ph.x.size(); ++b) {
          hopf_frame(eta, ph.x[a], ph.x[b], u, t);
          for (std::size_t k = 0; k < rr.x.size(); ++k) {
            const double rho = rr.x[k];
            push_oriented(out, rho * u, {u, rho * t[0], rho * t[1], rho * t[2]},
                          rr.w[k] * et.w[e] * ph.w[a] * ph.w[b]);
          }
        }
    }
  }
  return out;
}

NodeSet sphere_nodes(const CVec& center, double radius, int n_eta, int n_phi) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  NodeSet out;
  const Rule1D ph = periodic_trapezoid(n_phi, 0.0, 2.0 * pi);
  if (center.size() == 1) {
    for (std::size_t a = 0; a < ph.x.size(); ++a) {
      const cplx e = std::polar(1.0, ph.x[a]);
      CVec u(1), t(1);
      u << e;
      t << I * radius * e;
      push_oriented(out, center + radius * u, {t}, ph.w[a], &u);
    }
    return out;
  }
  if (center.size() != 2) throw DomainError("sphere rule supports n = 1, 2");
  const Rule1D et = gauss_legendre(n_eta, 0.0, pi / 2);
  CVec u;
  std::vector<CVec> t;
  for (std::size_t e = 0; e < et.x.size(); ++e)
    for (std::size_t a = 0; a < ph.x.size(); ++a)
      for (std::size_t b = 0; b < ph.x.size(); ++b) {
        hopf_frame(et.x[e], ph.x[a], ph.x[b], u, t);
        push_oriented(out, center + radius * u, {radius * t[0], radius * t[1], radius * t[2]},
                      et.w[e] * ph.w[a] * ph.w[b], &u);
      }
  return out;
}

}  // namespace fgbc
