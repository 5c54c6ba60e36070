#include "fgbc/forms.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace fgbc {

namespace {

constexpr double kPrune = 1e-300;

int wedge_sign(ExteriorForm::Mask a, ExteriorForm::Mask b) {
  int inv = 0;
  while (b) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    inv += std::popcount(y + 1 >= 32 ? 0u : (a >> (y + 1)));
  }
  return (inv & 1) ? -1 : 1;
}

int conj_bit(int bit, int n) {
  const int slot = bit / n;
  return (slot ^ 1) * n + bit % n;
}

void check_dim(int a, int b) {
  if (a != b) throw DomainError("form dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

const char* slot_name(int slot) {
  static const char* names[] = {"dz", "dzb", "dxi", "dxib"};
  return names[slot];
}

}  // namespace

TangentVector::TangentVector(int n, LabelSlot slot, const CVec& components) : TangentVector(n) {
  if (components.size() != n) throw DomainError("tangent vector component count mismatch");
  for (int i = 0; i < n; ++i) v_[static_cast<std::size_t>(static_cast<int>(slot) * n + i)] = components(i);
}

TangentVector TangentVector::real_base(const CVec& w) {
  const int n = static_cast<int>(w.size());
  TangentVector t(n);
  for (int i = 0; i < n; ++i) {
    t[i] = w(i);
    t[n + i] = std::conj(w(i));
  }
  return t;
}

TangentVector TangentVector::real_fiber(const CVec& w) {
  const int n = static_cast<int>(w.size());
  TangentVector t(n);
  for (int i = 0; i < n; ++i) {
    t[2 * n + i] = w(i);
    t[3 * n + i] = std::conj(w(i));
  }
  return t;
}

ExteriorForm::ExteriorForm(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1 || 4 * n > 32) throw DomainError("form dimension out of range");
  if (degree < 0) throw DomainError("negative form degree");
}

ExteriorForm ExteriorForm::scalar(int n, cplx c) {
  ExteriorForm f(n, 0);
  if (std::abs(c) >= kPrune) f.terms_.push_back({0u, c});
  return f;
}

int ExteriorForm::bit(CovectorLabel l) const {
  if (l.index < 0 || l.index >= n_) throw DomainError("covector index out of range");
  return static_cast<int>(l.slot) * n_ + l.index;
}

ExteriorForm ExteriorForm::covector(int n, CovectorLabel l, cplx c) {
  ExteriorForm f(n, 1);
  const Mask m = Mask{1} << f.bit(l);
  if (std::abs(c) >= kPrune) f.terms_.push_back({m, c});
  return f;
}

ExteriorForm ExteriorForm::monomial(int n, const std::vector<CovectorLabel>& labels, cplx c) {
  ExteriorForm f = scalar(n, c);
  for (const auto& l : labels) f = wedge(f, covector(n, l));
  return f;
}

ExteriorForm ExteriorForm::from_terms(int n, int degree, std::vector<Term> terms) {
  ExteriorForm f(n, degree);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mask < b.mask; });
  for (const auto& t : terms) {
    if (!f.terms_.empty() && f.terms_.back().mask == t.mask) {
      f.terms_.back().coeff += t.coeff;
    } else {
      f.terms_.push_back(t);
    }
  }
  std::erase_if(f.terms_, [](const Term& t) { return std::abs(t.coeff) < kPrune; });
  return f;
}

double ExteriorForm::max_abs() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

bool ExteriorForm::base_only() const {
  const Mask fiber = ((Mask{1} << (2 * n_)) - 1) << (2 * n_);
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return (t.mask & fiber) == 0; });
}

cplx ExteriorForm::coefficient(Mask mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask, [](const Term& t, Mask m) { return t.mask < m; });
  return (it != terms_.end() && it->mask == mask) ? it->coeff : cplx(0.0);
}

cplx ExteriorForm::coefficient(const std::vector<CovectorLabel>& labels) const {
  // coefficient c of l1^...^ld satisfies f = c * (l1^...^ld) + ...; the canonical
  // monomial equals sign * (l1^...^ld)
  ExteriorForm m = monomial(n_, labels);
  if (m.is_zero()) return 0.0;
  const Term& t = m.terms_.front();
  return coefficient(t.mask) * t.coeff;
}

ExteriorForm ExteriorForm::conj() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  int seq[32];
  for (const auto& t : terms_) {
    int d = 0;
    Mask m = t.mask, cm = 0;
    while (m) {
      const int b = std::countr_zero(m);
      m &= m - 1;
      seq[d++] = conj_bit(b, n_);
      cm |= Mask{1} << seq[d - 1];
    }
    int inv = 0;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) inv += seq[a] > seq[b];
    out.push_back({cm, std::conj(t.coeff) * ((inv & 1) ? -1.0 : 1.0)});
  }
  return from_terms(n_, degree_, std::move(out));
}

ExteriorForm& ExteriorForm::operator+=(const ExteriorForm& o) {
  if (o.terms_.empty() && o.n_ == 0) return *this;
  if (n_ == 0) return *this = o;
  check_dim(n_, o.n_);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    degree_ = o.degree_;
  } else if (degree_ != o.degree_) {
    throw DomainError("adding forms of different degree");
  }
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  *this = from_terms(n_, degree_, std::move(all));
  return *this;
}

ExteriorForm& ExteriorForm::operator-=(const ExteriorForm& o) { return *this += (o * -1.0); }

ExteriorForm& ExteriorForm::operator*=(cplx s) {
  for (auto& t : terms_) t.coeff *= s;
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.coeff) < kPrune; });
  return *this;
}

std::string ExteriorForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "-" : "+") << std::abs(t.coeff.imag()) << "i)";
    Mask m = t.mask;
    while (m) {
      const int b = std::countr_zero(m);
      m &= m - 1;
      os << " " << slot_name(b / n_) << (b % n_ + 1);
    }
  }
  return os.str();
}

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  check_dim(a.dim(), b.dim());
  std::vector<ExteriorForm::Term> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      if (ta.mask & tb.mask) continue;
      out.push_back({ta.mask | tb.mask, ta.coeff * tb.coeff * static_cast<double>(wedge_sign(ta.mask, tb.mask))});
    }
  return ExteriorForm::from_terms(a.dim(), a.degree() + b.degree(), std::move(out));
}

ExteriorForm contract(const TangentVector& v, const ExteriorForm& f) {
  check_dim(v.dim(), f.dim());
  if (f.degree() == 0) return ExteriorForm(f.dim(), 0);
  std::vector<ExteriorForm::Term> out;
  for (const auto& t : f.terms()) {
    ExteriorForm::Mask m = t.mask;
    int k = 0;
    while (m) {
      const int b = std::countr_zero(m);
      m &= m - 1;
      const cplx val = v[b];
      if (val != cplx(0.0))
        out.push_back({t.mask & ~(ExteriorForm::Mask{1} << b), t.coeff * val * ((k & 1) ? -1.0 : 1.0)});
      ++k;
    }
  }
  return ExteriorForm::from_terms(f.dim(), f.degree() - 1, std::move(out));
}

ExteriorForm contract_base(const CVec& X, const ExteriorForm& f) {
  return contract(TangentVector(f.dim(), LabelSlot::base_holo, X), f);
}

cplx evaluate(const ExteriorForm& f, const std::vector<TangentVector>& vectors) {
  if (static_cast<int>(vectors.size()) != f.degree())
    throw DomainError("evaluating a " + std::to_string(f.degree()) + "-form on " + std::to_string(vectors.size()) +
                      " vectors");
  ExteriorForm g = f;
  for (const auto& v : vectors) g = contract(v, g);
  return g.coefficient(ExteriorForm::Mask{0});
}

ExteriorForm real_part(const ExteriorForm& f) { return 0.5 * (f + f.conj()); }

ExteriorForm power(const ExteriorForm& f, int k) {
  ExteriorForm r = ExteriorForm::scalar(f.dim(), 1.0);
  for (int i = 0; i < k; ++i) r = wedge(r, f);
  return r;
}

ExteriorForm substitute(const ExteriorForm& f, const std::vector<ExteriorForm>& images) {
  if (static_cast<int>(images.size()) != 4 * f.dim()) throw DomainError("substitution needs one image per label");
  int image_degree = -1;
  for (const auto& im : images)
    if (!im.is_zero()) {
      if (image_degree >= 0 && im.degree() != image_degree) throw DomainError("substitution images of mixed degree");
      image_degree = im.degree();
    }
  if (image_degree < 0) image_degree = 1;
  ExteriorForm out(f.dim(), f.degree() * image_degree);
  for (const auto& t : f.terms()) {
    ExteriorForm acc = ExteriorForm::scalar(f.dim(), t.coeff);
    ExteriorForm::Mask m = t.mask;
    while (m && !acc.is_zero()) {
      const int b = std::countr_zero(m);
      m &= m - 1;
      acc = wedge(acc, images[static_cast<std::size_t>(b)]);
    }
    if (!acc.is_zero()) out += acc;
  }
  return out;
}

namespace {

std::vector<ExteriorForm> identity_images(int n) {
  std::vector<ExteriorForm> im;
  for (int s = 0; s < 4; ++s)
    for (int i = 0; i < n; ++i) im.push_back(ExteriorForm::covector(n, {static_cast<LabelSlot>(s), i}));
  return im;
}

}  // namespace

ExteriorForm pullback_section(const ExteriorForm& f, const CMat& J, const CMat& N) {
  const int n = f.dim();
  if (J.rows() != n || J.cols() != n || N.rows() != n || N.cols() != n)
    throw DomainError("pullback Jacobian or connection has wrong dimension");
  auto im = identity_images(n);
  const CMat M = J + N;
  for (int i = 0; i < n; ++i) {
    ExteriorForm h(n, 1), a(n, 1);
    for (int j = 0; j < n; ++j) {
      h += ExteriorForm::covector(n, dz(j), M(i, j));
      a += ExteriorForm::covector(n, dzbar(j), std::conj(M(i, j)));
    }
    im[static_cast<std::size_t>(2 * n + i)] = h;
    im[static_cast<std::size_t>(3 * n + i)] = a;
  }
  return substitute(f, im);
}

ExteriorForm adapted_to_coordinate(const ExteriorForm& f, const CMat& N) {
  const int n = f.dim();
  auto im = identity_images(n);
  for (int i = 0; i < n; ++i) {
    ExteriorForm h = ExteriorForm::covector(n, dxi(i));
    ExteriorForm a = ExteriorForm::covector(n, dxibar(i));
    for (int j = 0; j < n; ++j) {
      h += ExteriorForm::covector(n, dz(j), N(i, j));
      a += ExteriorForm::covector(n, dzbar(j), std::conj(N(i, j)));
    }
    im[static_cast<std::size_t>(2 * n + i)] = h;
    im[static_cast<std::size_t>(3 * n + i)] = a;
  }
  return substitute(f, im);
}

FormMatrix::FormMatrix(int n, int dim, int degree)
    : size_(n), degree_(degree), e_(static_cast<std::size_t>(n * n), ExteriorForm(dim, degree)) {}

FormMatrix FormMatrix::scalars(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  FormMatrix r(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) r.at(i, k) = ExteriorForm::scalar(n, m(i, k));
  return r;
}

double FormMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : e_) m = std::max(m, x.max_abs());
  return m;
}

FormMatrix& FormMatrix::operator+=(const FormMatrix& o) {
  if (o.size_ != size_) throw DomainError("form matrix size mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

FormMatrix& FormMatrix::operator*=(cplx s) {
  for (auto& x : e_) x *= s;
  return *this;
}

FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) {
  FormMatrix r = a;
  r += cplx(-1.0) * b;
  return r;
}

FormMatrix wedge(const FormMatrix& a, const FormMatrix& b) {
  if (a.size() != b.size()) throw DomainError("form matrix size mismatch");
  const int n = a.size();
  const int dim = a.at(0, 0).dim();
  FormMatrix r(n, dim, a.degree() + b.degree());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) r.at(i, k) += wedge(a.at(i, j), b.at(j, k));
  return r;
}

namespace {

template <typename F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    int inv = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inv += p[a] > p[b];
    f(p, (inv & 1) ? -1.0 : 1.0);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

ExteriorForm det(const FormMatrix& a) {
  if (a.degree() % 2 != 0) throw DomainError("determinant needs even-degree entries");
  const int n = a.size();
  const int dim = a.at(0, 0).dim();
  ExteriorForm out(dim, a.degree() * n);
  for_each_permutation(n, [&](const std::vector<int>& p, double sign) {
    ExteriorForm acc = ExteriorForm::scalar(dim, sign);
    for (int i = 0; i < n && !acc.is_zero(); ++i) acc = wedge(acc, a.at(i, p[static_cast<std::size_t>(i)]));
    out += acc;
  });
  return out;
}

std::vector<ExteriorForm> det_poly(const FormMatrix& a, const FormMatrix& b) {
  if (a.size() != b.size()) throw DomainError("det_poly size mismatch");
  if (a.degree() % 2 != 0 || b.degree() % 2 != 0) throw DomainError("det_poly needs even-degree (commuting) entries");
  const int n = a.size();
  const int dim = a.at(0, 0).dim();
  std::vector<ExteriorForm> out;
  for (int j = 0; j <= n; ++j) out.emplace_back(dim, j * a.degree() + (n - j) * b.degree());
  for_each_permutation(n, [&](const std::vector<int>& p, double sign) {
    std::vector<ExteriorForm> poly{ExteriorForm::scalar(dim, sign)};
    for (int i = 0; i < n; ++i) {
      const auto& ea = a.at(i, p[static_cast<std::size_t>(i)]);
      const auto& eb = b.at(i, p[static_cast<std::size_t>(i)]);
      std::vector<ExteriorForm> next;
      for (int j = 0; j <= i + 1; ++j) {
        ExteriorForm term(dim, j * a.degree() + (i + 1 - j) * b.degree());
        if (j <= i) term += wedge(poly[static_cast<std::size_t>(j)], eb);
        if (j >= 1) term += wedge(poly[static_cast<std::size_t>(j - 1)], ea);
        next.push_back(std::move(term));
      }
      poly = std::move(next);
    }
    for (int j = 0; j <= n; ++j) out[static_cast<std::size_t>(j)] += poly[static_cast<std::size_t>(j)];
  });
  return out;
}

}  // namespace fgbc
