#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgbc/types.hpp"

namespace fgbc {

/// Global label order: base-holo < base-anti < fiber-holo < fiber-anti.
/// Fiber labels stand for the adapted covectors delta xi.
enum class LabelSlot : int { base_holo = 0, base_anti = 1, fiber_holo = 2, fiber_anti = 3 };

struct CovectorLabel {
  LabelSlot slot;
  int index;
};

inline CovectorLabel dz(int i) { return {LabelSlot::base_holo, i}; }
inline CovectorLabel dzbar(int i) { return {LabelSlot::base_anti, i}; }
inline CovectorLabel dxi(int i) { return {LabelSlot::fiber_holo, i}; }
inline CovectorLabel dxibar(int i) { return {LabelSlot::fiber_anti, i}; }

/// Values of every covector label on one tangent vector.
class TangentVector {
 public:
  TangentVector(int n, LabelSlot slot, const CVec& components);
  /// Real vector of the base with complex components w (dz = w, dzbar = conj w).
  static TangentVector real_base(const CVec& w);
  /// Real vector of a fiber with complex components w.
  static TangentVector real_fiber(const CVec& w);

  int dim() const { return n_; }
  cplx operator[](int bit) const { return v_[static_cast<std::size_t>(bit)]; }
  cplx& operator[](int bit) { return v_[static_cast<std::size_t>(bit)]; }

 private:
  explicit TangentVector(int n) : n_(n), v_(static_cast<std::size_t>(4 * n)) {}
  int n_;
  std::vector<cplx> v_;
};

/// Complex differential form at a point, sparse over increasing label tuples.
class ExteriorForm {
 public:
  using Mask = std::uint32_t;
  struct Term {
    Mask mask;
    cplx coeff;
  };

  ExteriorForm() = default;
  ExteriorForm(int n, int degree);

  static ExteriorForm scalar(int n, cplx c);
  static ExteriorForm covector(int n, CovectorLabel l, cplx c = 1.0);
  /// c * l1 ^ l2 ^ ... in the given order.
  static ExteriorForm monomial(int n, const std::vector<CovectorLabel>& labels, cplx c = 1.0);

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double max_abs() const;
  /// True when no fiber label appears.
  bool base_only() const;
  int bit(CovectorLabel l) const;

  cplx coefficient(Mask mask) const;
  /// Coefficient of l1 ^ l2 ^ ... in the given order (sign adjusted).
  cplx coefficient(const std::vector<CovectorLabel>& labels) const;

  ExteriorForm conj() const;

  ExteriorForm& operator+=(const ExteriorForm& o);
  ExteriorForm& operator-=(const ExteriorForm& o);
  ExteriorForm& operator*=(cplx s);
  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
  friend ExteriorForm operator*(ExteriorForm a, cplx s) { return a *= s; }
  friend ExteriorForm operator*(cplx s, ExteriorForm a) { return a *= s; }
  friend ExteriorForm operator*(ExteriorForm a, double s) { return a *= cplx(s); }
  friend ExteriorForm operator*(double s, ExteriorForm a) { return a *= cplx(s); }
  ExteriorForm operator-() const { return *this * -1.0; }

  std::string to_string() const;

  /// Build from unsorted terms; merges and drops exact zeros.
  static ExteriorForm from_terms(int n, int degree, std::vector<Term> terms);

 private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);
/// Interior product of v into f.
ExteriorForm contract(const TangentVector& v, const ExteriorForm& f);
/// Contraction of the holomorphic base vector X^i d/dz^i.
ExteriorForm contract_base(const CVec& X, const ExteriorForm& f);
/// f(v1, ..., vd).
cplx evaluate(const ExteriorForm& f, const std::vector<TangentVector>& vectors);
ExteriorForm real_part(const ExteriorForm& f);
ExteriorForm power(const ExteriorForm& f, int k);
/// Replace each label (by bit) with a form and expand.
ExteriorForm substitute(const ExteriorForm& f, const std::vector<ExteriorForm>& images);
/// Pull back along the section z -> (z, X(z)): dxi -> J dz, delta xi -> (J + N) dz.
/// J(i, j) = dX^i/dz^j, N(i, j) = N^i_j at (z, X(z)).
ExteriorForm pullback_section(const ExteriorForm& f, const CMat& J, const CMat& N);
/// Rewrite delta xi = dxi + N dz so fiber labels mean the coordinate dxi.
ExteriorForm adapted_to_coordinate(const ExteriorForm& f, const CMat& N);

/// n x n matrix of forms of a common degree; entry (i, k).
class FormMatrix {
 public:
  FormMatrix() = default;
  FormMatrix(int n, int dim, int degree);
  static FormMatrix scalars(const CMat& m);

  int size() const { return size_; }
  int degree() const { return degree_; }
  ExteriorForm& at(int i, int k) { return e_[static_cast<std::size_t>(i * size_ + k)]; }
  const ExteriorForm& at(int i, int k) const { return e_[static_cast<std::size_t>(i * size_ + k)]; }
  double max_abs() const;

  FormMatrix& operator+=(const FormMatrix& o);
  FormMatrix& operator*=(cplx s);
  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
  friend FormMatrix operator*(cplx s, FormMatrix a) { return a *= s; }
  friend FormMatrix operator-(const FormMatrix& a, const FormMatrix& b);

  template <typename F>
  FormMatrix map(F&& f) const {
    FormMatrix r = *this;
    for (auto& x : r.e_) x = f(x);
    if (!r.e_.empty()) r.degree_ = r.e_.front().degree();
    return r;
  }

 private:
  int size_ = 0;
  int degree_ = 0;
  std::vector<ExteriorForm> e_;
};

/// (A ^ B)(i, k) = sum_j A(i, j) ^ B(j, k).
FormMatrix wedge(const FormMatrix& a, const FormMatrix& b);
/// Determinant of a matrix with even-degree (commuting) entries.
ExteriorForm det(const FormMatrix& a);
/// Coefficients of lambda^j in det(lambda A + B), j = 0..n.
std::vector<ExteriorForm> det_poly(const FormMatrix& a, const FormMatrix& b);

}  // namespace fgbc
