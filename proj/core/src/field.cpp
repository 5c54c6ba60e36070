#include "fgbc/field.hpp"

#include <sstream>

namespace fgbc {

namespace {

struct BaseJets {
  const JetSpace* space;
  std::vector<Jet> z;
};

// z seeded over its 2n real coordinates, order 1
BaseJets seed_base(const CVec& z) {
  const int n = static_cast<int>(z.size());
  BaseJets b{JetSpace::get(2 * n, 1), {}};
  for (int i = 0; i < n; ++i) b.z.push_back(complex_variable(b.space, 2 * i, 2 * i + 1, z(i)));
  return b;
}

void check_dim(const HolomorphicField& f, const CVec& z) {
  if (z.size() != f.dim()) throw DomainError("point dimension does not match field " + f.name());
}

}  // namespace

CVec HolomorphicField::value(const CVec& z, int chart) const {
  check_dim(*this, z);
  std::vector<Jet> zs;
  for (int i = 0; i < z.size(); ++i) zs.emplace_back(z(i));
  const auto x = components(chart, zs);
  CVec out(dim());
  for (int i = 0; i < dim(); ++i) out(i) = x[static_cast<std::size_t>(i)].value();
  return out;
}

CMat HolomorphicField::jacobian(const CVec& z, int chart) const {
  check_dim(*this, z);
  const auto b = seed_base(z);
  const auto x = components(chart, b.z);
  CMat mu(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      mu(i, j) = d_holo(x[static_cast<std::size_t>(i)], 2 * j, 2 * j + 1).value();
  return mu;
}

double HolomorphicField::holomorphy_residual(const CVec& z, int chart) const {
  check_dim(*this, z);
  const auto b = seed_base(z);
  const auto x = components(chart, b.z);
  double r = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      r = std::max(r, std::abs(d_anti(x[static_cast<std::size_t>(i)], 2 * j, 2 * j + 1).value()));
  return r;
}

std::vector<Jet> ConstantField::components(int, std::span<const Jet> z) const {
  std::vector<Jet> out;
  const JetSpace* space = z.empty() ? JetSpace::get(0, 1) : z[0].space_ptr();
  for (int i = 0; i < lambda_.size(); ++i) out.emplace_back(space, lambda_(i));
  return out;
}

std::vector<Jet> EulerField::components(int chart, std::span<const Jet> z) const {
  std::vector<Jet> out;
  for (int k = 0; k < n_; ++k) {
    const Jet& zk = z[static_cast<std::size_t>(k)];
    out.push_back(((chart >> k) & 1) ? -zk : zk);
  }
  return out;
}

std::vector<FieldZero> EulerField::zeros() const {
  std::vector<FieldZero> out;
  for (int c = 0; c < (1 << n_); ++c) out.push_back({c, CVec::Zero(n_)});
  return out;
}

std::vector<Jet> SquareField::components(int chart, std::span<const Jet> z) const {
  if (chart == 0) return {z[0] * z[0]};
  return {Jet(z[0].space_ptr(), -1.0)};
}

std::vector<FieldZero> SquareField::zeros() const { return {{0, CVec::Zero(1)}}; }

std::vector<Jet> LinearField::components(int, std::span<const Jet> z) const {
  std::vector<Jet> out;
  for (int i = 0; i < a_.rows(); ++i) {
    Jet s(z[0].space_ptr(), 0.0);
    for (int j = 0; j < a_.cols(); ++j) s += a_(i, j) * z[static_cast<std::size_t>(j)];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FieldZero> LinearField::zeros() const { return {{0, CVec::Zero(a_.rows())}}; }

std::vector<FieldZero> ChartSwappedField::zeros() const {
  auto zs = base_->zeros();
  for (auto& z : zs) z.chart ^= mask_;
  return zs;
}

LinearChangeField::LinearChangeField(FieldPtr base, CMat l) : base_(std::move(base)), l_(std::move(l)) {
  if (l_.rows() != base_->dim() || l_.cols() != base_->dim()) throw DomainError("linear change has wrong size");
  Eigen::FullPivLU<CMat> lu(l_);
  if (!lu.isInvertible()) throw DomainError("linear change is singular");
  linv_ = lu.inverse();
}

std::vector<Jet> LinearChangeField::components(int chart, std::span<const Jet> z) const {
  const int n = dim();
  std::vector<Jet> zo;
  for (int i = 0; i < n; ++i) {
    Jet s(z[0].space_ptr(), 0.0);
    for (int j = 0; j < n; ++j) s += linv_(i, j) * z[static_cast<std::size_t>(j)];
    zo.push_back(std::move(s));
  }
  const auto x = base_->components(chart, zo);
  std::vector<Jet> out;
  for (int i = 0; i < n; ++i) {
    Jet s(z[0].space_ptr(), 0.0);
    for (int j = 0; j < n; ++j) s += l_(i, j) * x[static_cast<std::size_t>(j)];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FieldZero> LinearChangeField::zeros() const {
  auto zs = base_->zeros();
  for (auto& z : zs) z.point = l_ * z.point;
  return zs;
}

FieldPtr make_field(const std::string& name, int n) {
  if (name == "constant") {
    CVec lambda(n);
    if (n == 1) {
      lambda << cplx(1.0, 0.5);
    } else if (n == 2) {
      lambda << cplx(1.0, 0.5), cplx(-0.3, 0.8);
    } else {
      throw DomainError("constant field supports n = 1, 2");
    }
    return std::make_shared<ConstantField>(lambda);
  }
  if (name == "euler" || name == "euler-product") {
    if ((name == "euler") != (n == 1)) throw DomainError("field '" + name + "' has the wrong dimension");
    return std::make_shared<EulerField>(n);
  }
  if (name == "z-squared") {
    if (n != 1) throw DomainError("z-squared is a field on CP^1");
    return std::make_shared<SquareField>();
  }
  if (name == "identity") return std::make_shared<LinearField>(CMat::Identity(n, n));
  throw DomainError("unknown vector field '" + name + "'");
}

std::vector<std::string> builtin_field_names() {
  return {"constant", "euler", "euler-product", "z-squared", "identity"};
}

}  // namespace fgbc
