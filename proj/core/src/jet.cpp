#include "fgbc/jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace fgbc {

namespace {

std::uint64_t pack(const std::uint8_t* e, int vars) {
  std::uint64_t key = 0;
  for (int v = 0; v < vars; ++v) key |= static_cast<std::uint64_t>(e[v]) << (4 * v);
  return key;
}

void enumerate(int vars, int remaining, int pos, std::vector<std::uint8_t>& cur,
               std::vector<std::uint8_t>& out) {
  if (pos == vars - 1) {
    cur[pos] = static_cast<std::uint8_t>(remaining);
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = static_cast<std::uint8_t>(e);
    enumerate(vars, remaining - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> spaces;
};

Registry& registry() {
  static Registry r;
  return r;
}

const JetSpace* common_space(const JetSpace* a, const JetSpace* b) {
  if (a == b) return a;
  if (a->vars() == 0) return b;
  if (b->vars() == 0) return a;
  if (a->vars() != b->vars()) {
    std::ostringstream os;
    os << "jet variable count mismatch: " << a->vars() << " vs " << b->vars();
    throw DomainError(os.str());
  }
  return a->order() <= b->order() ? a : b;
}

const double kFactorial[] = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0};

}  // namespace

const JetSpace* JetSpace::get(int vars, int order) {
  if (vars < 0 || vars > kMaxJetVars) throw DomainError("jet variable count out of range: " + std::to_string(vars));
  if (order < 0 || order > kMaxJetOrder) throw DomainError("jet order out of range: " + std::to_string(order));
  if (vars == 0) order = 0;
  const JetSpace* lower = (order > 0) ? get(vars, order - 1) : nullptr;
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto& slot = reg.spaces[{vars, order}];
  if (!slot) slot.reset(new JetSpace(vars, order, lower));
  return slot.get();
}

JetSpace::JetSpace(int vars, int order, const JetSpace* lower) : vars_(vars), order_(order), lower_(lower) {
  const std::size_t s = stride();
  offsets_.push_back(0);
  if (vars_ == 0) {
    exps_.assign(1, 0);
    degree_.push_back(0);
    offsets_.push_back(1);
  } else {
    std::vector<std::uint8_t> cur(static_cast<std::size_t>(vars_), 0);
    for (int d = 0; d <= order_; ++d) {
      enumerate(vars_, d, 0, cur, exps_);
      const std::size_t count = exps_.size() / s;
      degree_.resize(count, d);
      offsets_.push_back(count);
    }
  }
  const std::size_t n = degree_.size();
  std::unordered_map<std::uint64_t, std::size_t> lookup;
  for (std::size_t i = 0; i < n; ++i) lookup.emplace(pack(&exps_[i * s], vars_), i);

  raise_.assign(n * s, -1);
  std::vector<std::uint8_t> tmp(s);
  for (std::size_t i = 0; i < n; ++i) {
    for (int v = 0; v < vars_; ++v) {
      if (degree_[i] + 1 > order_) continue;
      std::copy_n(&exps_[i * s], s, tmp.begin());
      tmp[static_cast<std::size_t>(v)] += 1;
      raise_[i * s + static_cast<std::size_t>(v)] = static_cast<std::ptrdiff_t>(lookup.at(pack(tmp.data(), vars_)));
    }
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_target(n);
  left_begin_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (degree_[i] + degree_[j] > order_) continue;
      for (std::size_t v = 0; v < s; ++v) tmp[v] = exps_[i * s + v] + exps_[j * s + v];
      const auto k = static_cast<std::uint32_t>(lookup.at(pack(tmp.data(), vars_)));
      pair_right_.push_back(static_cast<std::uint32_t>(j));
      pair_out_.push_back(k);
      by_target[k].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
    left_begin_.push_back(static_cast<std::uint32_t>(pair_right_.size()));
  }
  target_begin_.push_back(0);
  for (std::size_t k = 0; k < n; ++k) {
    for (auto [a, b] : by_target[k]) {
      target_a_.push_back(a);
      target_b_.push_back(b);
    }
    target_begin_.push_back(static_cast<std::uint32_t>(target_a_.size()));
  }
}

std::ptrdiff_t JetSpace::index_of(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != vars_) throw DomainError("multi-index length does not match jet variables");
  int deg = 0;
  for (int e : exps) {
    if (e < 0) throw DomainError("negative multi-index entry");
    deg += e;
  }
  if (deg > order_) return -1;
  std::size_t idx = 0;
  for (int v = 0; v < vars_; ++v) {
    for (int e = 0; e < exps[static_cast<std::size_t>(v)]; ++e) {
      const auto r = raise(idx, v);
      if (r < 0) return -1;
      idx = static_cast<std::size_t>(r);
    }
  }
  return static_cast<std::ptrdiff_t>(idx);
}

Jet::Jet() : Jet(cplx(0.0)) {}
Jet::Jet(double c) : Jet(cplx(c)) {}
Jet::Jet(cplx c) : space_(JetSpace::get(0, 0)), c_(1, c) {}
Jet::Jet(const JetSpace* space, cplx c) : space_(space), c_(space->size(), cplx(0.0)) { c_[0] = c; }

Jet Jet::variable(const JetSpace* space, int var, cplx value) {
  if (var < 0 || var >= space->vars()) throw DomainError("jet variable index out of range");
  Jet j(space, value);
  if (space->order() >= 1) j.c_[static_cast<std::size_t>(space->raise(0, var))] = 1.0;
  return j;
}

cplx Jet::partial(std::span<const int> exps) const {
  const auto idx = space_->index_of(exps);
  if (idx < 0) throw DomainError("requested derivative exceeds jet order");
  double f = 1.0;
  for (int e : exps) f *= kFactorial[e];
  return c_[static_cast<std::size_t>(idx)] * f;
}

Jet Jet::derivative(int var) const {
  if (var < 0 || var >= vars()) throw DomainError("derivative variable out of range");
  if (order() == 0) throw DomainError("cannot differentiate an order-0 jet");
  const JetSpace* low = space_->lower();
  Jet d(low, 0.0);
  for (std::size_t i = 0; i < low->size(); ++i) {
    const auto r = static_cast<std::size_t>(space_->raise(i, var));
    d.c_[i] = c_[r] * static_cast<double>(space_->exponents(r)[var]);
  }
  return d;
}

Jet Jet::truncated(int order) const {
  if (order >= this->order() || vars() == 0) return *this;
  if (order < 0) throw DomainError("negative truncation order");
  const JetSpace* sp = JetSpace::get(vars(), order);
  Jet t(sp, 0.0);
  std::copy_n(c_.begin(), sp->size(), t.c_.begin());
  return t;
}

Jet Jet::conj() const {
  Jet r = *this;
  for (auto& v : r.c_) v = std::conj(v);
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  const JetSpace* sp = common_space(space_, o.space_);
  if (sp != space_) {
    if (space_->vars() == 0) {
      const cplx v = c_[0];
      *this = o;
      c_[0] += v;
      return *this;
    }
    *this = truncated(sp->order());
  }
  if (o.space_->vars() == 0) {
    c_[0] += o.c_[0];
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  }
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const JetSpace* sp = common_space(space_, o.space_);
  if (sp != space_) {
    if (space_->vars() == 0) {
      const cplx v = c_[0];
      *this = -o;
      c_[0] += v;
      return *this;
    }
    *this = truncated(sp->order());
  }
  if (o.space_->vars() == 0) {
    c_[0] -= o.c_[0];
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  }
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet operator*(const Jet& a, const Jet& b) {
  if (a.is_scalar()) return b * a.c_[0];
  if (b.is_scalar()) return a * b.c_[0];
  const JetSpace* sp = common_space(a.space_, b.space_);
  Jet ta, tb;
  const cplx* pa = a.c_.data();
  const cplx* pb = b.c_.data();
  if (a.space_ != sp) {
    ta = a.truncated(sp->order());
    pa = ta.c_.data();
  }
  if (b.space_ != sp) {
    tb = b.truncated(sp->order());
    pb = tb.c_.data();
  }
  Jet r(sp, 0.0);
  cplx* out = r.c_.data();
  const auto begin = sp->left_begin();
  const auto right = sp->pair_right();
  const auto target = sp->pair_out();
  const std::size_t n = sp->size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = pa[i];
    if (ai.real() == 0.0 && ai.imag() == 0.0) continue;
    const double ar = ai.real(), aim = ai.imag();
    for (std::uint32_t p = begin[i]; p < begin[i + 1]; ++p) {
      const cplx bj = pb[right[p]];
      cplx& o = out[target[p]];
      o = cplx(o.real() + ar * bj.real() - aim * bj.imag(), o.imag() + ar * bj.imag() + aim * bj.real());
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.is_scalar()) {
    if (b.c_[0] == cplx(0.0)) throw DomainError("jet division by zero");
    return a * (1.0 / b.c_[0]);
  }
  const JetSpace* sp = common_space(a.space_, b.space_);
  const Jet tb = b.truncated(sp->order());
  Jet ta = a.is_scalar() ? Jet(sp, a.c_[0]) : a.truncated(sp->order());
  const cplx b0 = tb.c_[0];
  if (b0 == cplx(0.0)) throw DomainError("jet division by a jet with zero value");
  const cplx inv = 1.0 / b0;
  Jet r(sp, 0.0);
  const auto tbeg = sp->target_begin();
  const auto ia = sp->target_a();
  const auto ib = sp->target_b();
  for (std::size_t g = 0; g < sp->size(); ++g) {
    cplx s = ta.c_[g];
    for (std::uint32_t p = tbeg[g]; p < tbeg[g + 1]; ++p) {
      if (ib[p] == 0) continue;
      s -= r.c_[ia[p]] * tb.c_[ib[p]];
    }
    r.c_[g] = s * inv;
  }
  return r;
}

Jet sqrt(const Jet& a) {
  Jet r(a.space_, 0.0);
  const cplx c0 = std::sqrt(a.c_[0]);
  if (c0 == cplx(0.0) && a.order() > 0) throw DomainError("jet sqrt at zero is not differentiable");
  r.c_[0] = c0;
  const JetSpace* sp = a.space_;
  const auto tbeg = sp->target_begin();
  const auto ia = sp->target_a();
  const auto ib = sp->target_b();
  const cplx inv = (a.order() > 0) ? 1.0 / (2.0 * c0) : cplx(0.0);
  for (std::size_t g = 1; g < sp->size(); ++g) {
    cplx s = a.c_[g];
    for (std::uint32_t p = tbeg[g]; p < tbeg[g + 1]; ++p) {
      if (ia[p] == 0 || ib[p] == 0) continue;
      s -= r.c_[ia[p]] * r.c_[ib[p]];
    }
    r.c_[g] = s * inv;
  }
  return r;
}

namespace {

// f(a) from derivatives d[m] = f^(m)(a0), m = 0..order
Jet compose(const Jet& a, const std::array<cplx, kMaxJetOrder + 1>& d) {
  const int k = a.order();
  Jet h = a;
  h[0] = 0.0;
  Jet r(a.space_ptr(), d[static_cast<std::size_t>(k)] / kFactorial[k]);
  for (int m = k - 1; m >= 0; --m) {
    r = r * h;
    r[0] += d[static_cast<std::size_t>(m)] / kFactorial[m];
  }
  return r;
}

}  // namespace

Jet exp(const Jet& a) {
  std::array<cplx, kMaxJetOrder + 1> d;
  d.fill(std::exp(a.value()));
  return compose(a, d);
}

Jet log(const Jet& a) {
  const cplx a0 = a.value();
  if (a0 == cplx(0.0)) throw DomainError("jet log at zero");
  std::array<cplx, kMaxJetOrder + 1> d;
  d[0] = std::log(a0);
  cplx inv = 1.0 / a0, p = inv;
  for (int m = 1; m <= kMaxJetOrder; ++m) {
    d[static_cast<std::size_t>(m)] = ((m % 2 == 1) ? 1.0 : -1.0) * kFactorial[m - 1] * p;
    p *= inv;
  }
  return compose(a, d);
}

Jet pow(const Jet& a, double p) {
  const cplx a0 = a.value();
  if (a0 == cplx(0.0) && a.order() > 0) throw DomainError("jet pow at zero");
  std::array<cplx, kMaxJetOrder + 1> d;
  double coef = 1.0;
  for (int m = 0; m <= kMaxJetOrder; ++m) {
    d[static_cast<std::size_t>(m)] = (m <= a.order()) ? coef * std::pow(a0, p - m) : cplx(0.0);
    coef *= (p - m);
  }
  return compose(a, d);
}

Jet conj(const Jet& a) { return a.conj(); }

Jet abs2(const Jet& a) { return a * a.conj(); }

Jet real(const Jet& a) { return 0.5 * (a + a.conj()); }

Jet complex_variable(const JetSpace* space, int re_var, int im_var, cplx value) {
  Jet j(space, value);
  if (space->order() >= 1) {
    if (re_var >= 0) j[static_cast<std::size_t>(space->raise(0, re_var))] = 1.0;
    if (im_var >= 0) j[static_cast<std::size_t>(space->raise(0, im_var))] = I;
  }
  return j;
}

Jet d_holo(const Jet& f, int re_var, int im_var) {
  Jet dx = f.derivative(re_var);
  Jet dy = f.derivative(im_var);
  return 0.5 * (dx - I * dy);
}

Jet d_anti(const Jet& f, int re_var, int im_var) {
  Jet dx = f.derivative(re_var);
  Jet dy = f.derivative(im_var);
  return 0.5 * (dx + I * dy);
}

namespace {

std::string var_name(ComplexVar v) {
  return std::string(v.slot == Slot::base ? "z" : "xi") + std::to_string(v.index + 1);
}

}  // namespace

JetPoint JetPoint::seed(const CVec& z, const CVec& xi, int order, std::vector<RealVar> tracked) {
  if (z.size() != xi.size()) throw DomainError("base and fiber dimensions differ");
  if (xi.size() == 0 || xi.norm() == 0.0) throw DomainError("fiber vector is zero: metric is smooth only off the zero section");
  if (order < 1 || order > kMaxJetOrder)
    throw DomainError("jet order must lie in 1.." + std::to_string(kMaxJetOrder) + ", got " + std::to_string(order));
  if (static_cast<int>(tracked.size()) > kMaxJetVars) throw DomainError("too many tracked variables");
  const int n = static_cast<int>(z.size());
  for (std::size_t a = 0; a < tracked.size(); ++a) {
    if (tracked[a].var.index < 0 || tracked[a].var.index >= n) throw DomainError("tracked variable index out of range");
    for (std::size_t b = 0; b < a; ++b)
      if (tracked[a] == tracked[b]) throw DomainError("duplicate tracked variable " + var_name(tracked[a].var));
  }
  JetPoint p;
  p.space_ = JetSpace::get(static_cast<int>(tracked.size()), order);
  p.tracked_ = std::move(tracked);
  for (int i = 0; i < n; ++i) {
    auto [zr, zi] = p.pair_of(zvar(i));
    p.z_.push_back(complex_variable(p.space_, zr, zi, z(i)));
    auto [xr, xim] = p.pair_of(xivar(i));
    p.xi_.push_back(complex_variable(p.space_, xr, xim, xi(i)));
  }
  return p;
}

JetPoint JetPoint::seed_all(const CVec& z, const CVec& xi, int order) {
  std::vector<RealVar> t;
  for (Slot s : {Slot::base, Slot::fiber})
    for (int i = 0; i < z.size(); ++i)
      for (bool im : {false, true}) t.push_back({{s, i}, im});
  return seed(z, xi, order, std::move(t));
}

JetPoint JetPoint::seed_fiber(const CVec& z, const CVec& xi, int order) {
  std::vector<RealVar> t;
  for (int i = 0; i < xi.size(); ++i)
    for (bool im : {false, true}) t.push_back({xivar(i), im});
  return seed(z, xi, order, std::move(t));
}

int JetPoint::real_index(RealVar v) const {
  for (std::size_t k = 0; k < tracked_.size(); ++k)
    if (tracked_[k] == v) return static_cast<int>(k);
  return -1;
}

std::pair<int, int> JetPoint::pair_of(ComplexVar v) const {
  return {real_index({v, false}), real_index({v, true})};
}

Jet JetPoint::holo(const Jet& f, ComplexVar v) const {
  auto [re, im] = pair_of(v);
  if (re < 0 || im < 0) throw DomainError("Wirtinger derivative in untracked variable " + var_name(v));
  return d_holo(f, re, im);
}

Jet JetPoint::anti(const Jet& f, ComplexVar v) const {
  auto [re, im] = pair_of(v);
  if (re < 0 || im < 0) throw DomainError("Wirtinger derivative in untracked variable " + var_name(v));
  return d_anti(f, re, im);
}

cplx JetPoint::wirtinger(const Jet& f, std::span<const ComplexVar> holo_vars,
                         std::span<const ComplexVar> anti_vars) const {
  if (static_cast<int>(holo_vars.size() + anti_vars.size()) > f.order())
    throw DomainError("Wirtinger derivative order exceeds jet order");
  Jet g = f;
  for (auto v : holo_vars) g = holo(g, v);
  for (auto v : anti_vars) g = anti(g, v);
  return g.value();
}

std::string format_point(const CVec& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v(i).real() << (v(i).imag() < 0 ? "-" : "+") << std::abs(v(i).imag()) << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace fgbc
