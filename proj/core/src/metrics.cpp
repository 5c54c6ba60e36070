#include "fgbc/metrics.hpp"

#include <cstdio>
#include <sstream>

namespace fgbc {

namespace {

std::string with_parameter(const char* base, double v) {
  std::ostringstream os;
  os << base << "(" << v << ")";
  return os.str();
}

Jet fs_weight(const Jet& z) { return 1.0 / pow(1.0 + abs2(z), 2.0); }

void check_sizes(std::span<const Jet> z, std::span<const Jet> xi, int n) {
  if (static_cast<int>(z.size()) != n || static_cast<int>(xi.size()) != n)
    throw DomainError("metric evaluated with wrong dimension");
}

}  // namespace

Jet FlatHermitian::squared_norm(int, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, n_);
  Jet g = abs2(xi[0]);
  for (int i = 1; i < n_; ++i) g += abs2(xi[static_cast<std::size_t>(i)]);
  return g;
}

Jet FubiniStudy::squared_norm(int, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, 1);
  return abs2(xi[0]) * fs_weight(z[0]);
}

std::string ConformalFubiniStudy::name() const { return with_parameter("fubini-study-conformal", kappa_); }

Jet ConformalFubiniStudy::squared_norm(int, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, 1);
  const Jet r = abs2(z[0]);
  const Jet s = 4.0 * r / ((1.0 + r) * (1.0 + r));
  return exp(kappa_ * s) * abs2(xi[0]) * fs_weight(z[0]);
}

Jet QuarticMinkowski::squared_norm(int, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, 2);
  const Jet a = abs2(xi[0]), b = abs2(xi[1]);
  return sqrt(a * a + b * b);
}

bool QuarticMinkowski::on_degeneracy_locus(const CVec& xi, double tol) const {
  const double s = xi.norm();
  return std::abs(xi(0)) <= tol * s || std::abs(xi(1)) <= tol * s;
}

std::string QuarticBlend::name() const { return with_parameter("quartic-blend", lambda_); }

Jet QuarticBlend::squared_norm(int, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, 2);
  const Jet a = abs2(xi[0]), b = abs2(xi[1]);
  const Jet s = a + b;
  return sqrt(s * s + lambda_ * (a * a + b * b));
}

Jet FubiniStudyProduct::squared_norm(int, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, 2);
  return abs2(xi[0]) * fs_weight(z[0]) + abs2(xi[1]) * fs_weight(z[1]);
}

std::string FsProductBlend::name() const { return with_parameter("fs-product-blend", lambda_); }

Jet FsProductBlend::squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const {
  check_sizes(z, xi, 2);
  if (chart < 0 || chart > 3) throw DomainError("fs-product-blend chart index must be 0..3");
  const Jet h1 = fs_weight(z[0]), h2 = fs_weight(z[1]);
  const Jet s = abs2(xi[0]) * h1 + abs2(xi[1]) * h2;
  if (lambda_ == 0.0) return s;
  auto pairing = [](const Jet& zk, const Jet& xk, const Jet& h, bool second_chart) {
    if (!second_chart) return h * xk;
    const Jet zb = conj(zk);
    return -1.0 * h * zb * zb * xk;
  };
  const Jet c1 = pairing(z[0], xi[0], h1, (chart & 1) != 0);
  const Jet c2 = pairing(z[1], xi[1], h2, (chart & 2) != 0);
  const Jet q = c1 * c1 + c2 * c2;
  return sqrt(s * s + lambda_ * abs2(q));
}

LinearChangeMetric::LinearChangeMetric(MetricPtr base, CMat a, CMat b, double scale)
    : base_(std::move(base)), a_(std::move(a)), b_(std::move(b)), scale_(scale) {
  const int n = base_->dim();
  if (a_.rows() != n || a_.cols() != n || b_.rows() != n || b_.cols() != n)
    throw DomainError("linear change has wrong dimension");
}

Jet LinearChangeMetric::squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const {
  const int n = base_->dim();
  std::vector<Jet> zz, xx;
  for (int i = 0; i < n; ++i) {
    Jet u(0.0), v(0.0);
    for (int j = 0; j < n; ++j) {
      u += a_(i, j) * z[static_cast<std::size_t>(j)];
      v += b_(i, j) * xi[static_cast<std::size_t>(j)];
    }
    zz.push_back(u);
    xx.push_back(v);
  }
  return scale_ * base_->squared_norm(chart, zz, xx);
}

bool LinearChangeMetric::on_degeneracy_locus(const CVec& xi, double tol) const {
  return base_->on_degeneracy_locus(b_ * xi, tol);
}

Jet ChartSwappedMetric::squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const {
  return base_->squared_norm(chart ^ mask_, z, xi);
}

std::vector<std::string> builtin_metric_names() {
  return {"flat-hermitian", "fubini-study", "fubini-study-conformal", "quartic-minkowski",
          "quartic-blend",  "fubini-study-product", "fs-product-blend"};
}

MetricPtr make_metric(const std::string& text, int n, double parameter) {
  std::string name = text;
  const auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') throw DomainError("malformed metric name: " + text);
    name = text.substr(0, open);
    try {
      parameter = std::stod(text.substr(open + 1, text.size() - open - 2));
    } catch (const std::exception&) {
      throw DomainError("malformed metric parameter: " + text);
    }
  }
  auto need = [&](int d) {
    if (n != d) throw DomainError("metric " + name + " needs complex dimension " + std::to_string(d));
  };
  if (name == "flat-hermitian") {
    if (n < 1 || n > 4) throw DomainError("flat-hermitian dimension must be 1..4");
    return std::make_shared<FlatHermitian>(n);
  }
  if (name == "fubini-study") {
    need(1);
    return std::make_shared<FubiniStudy>();
  }
  if (name == "fubini-study-conformal") {
    need(1);
    return std::make_shared<ConformalFubiniStudy>(parameter);
  }
  if (name == "quartic-minkowski") {
    need(2);
    return std::make_shared<QuarticMinkowski>();
  }
  if (name == "quartic-blend") {
    need(2);
    if (parameter < 0.0) throw DomainError("quartic-blend needs lambda >= 0");
    return std::make_shared<QuarticBlend>(parameter);
  }
  if (name == "fubini-study-product") {
    need(2);
    return std::make_shared<FubiniStudyProduct>();
  }
  if (name == "fs-product-blend") {
    need(2);
    if (parameter < 0.0) throw DomainError("fs-product-blend needs lambda >= 0");
    return std::make_shared<FsProductBlend>(parameter);
  }
  throw DomainError("unknown metric: " + text);
}

}  // namespace fgbc
