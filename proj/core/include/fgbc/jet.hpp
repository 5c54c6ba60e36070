#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fgbc/types.hpp"

namespace fgbc {

inline constexpr int kMaxJetOrder = 4;
inline constexpr int kMaxJetVars = 12;

/// Graded table of multi-indices for a given variable count and order.
/// Lower orders are prefixes of higher ones.
class JetSpace {
 public:
  /// Shared, immortal instance; thread-safe.
  static const JetSpace* get(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  std::size_t size() const { return degree_.size(); }
  std::size_t size_up_to(int k) const { return offsets_[static_cast<std::size_t>(k) + 1]; }

  int degree(std::size_t idx) const { return degree_[idx]; }
  const std::uint8_t* exponents(std::size_t idx) const { return &exps_[idx * stride()]; }
  std::ptrdiff_t index_of(std::span<const int> exps) const;
  /// Index of alpha + e_var, or -1 when it leaves the table.
  std::ptrdiff_t raise(std::size_t idx, int var) const { return raise_[idx * stride() + var]; }
  const JetSpace* lower() const { return lower_; }

  // product table, grouped by the left factor
  std::span<const std::uint32_t> left_begin() const { return left_begin_; }
  std::span<const std::uint32_t> pair_right() const { return pair_right_; }
  std::span<const std::uint32_t> pair_out() const { return pair_out_; }
  // product table, grouped by the target
  std::span<const std::uint32_t> target_begin() const { return target_begin_; }
  std::span<const std::uint32_t> target_a() const { return target_a_; }
  std::span<const std::uint32_t> target_b() const { return target_b_; }

 private:
  JetSpace(int vars, int order, const JetSpace* lower);
  std::size_t stride() const { return vars_ == 0 ? 1 : static_cast<std::size_t>(vars_); }

  int vars_;
  int order_;
  const JetSpace* lower_;
  std::vector<int> degree_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint8_t> exps_;
  std::vector<std::ptrdiff_t> raise_;
  std::vector<std::uint32_t> left_begin_, pair_right_, pair_out_;
  std::vector<std::uint32_t> target_begin_, target_a_, target_b_;
};

/// Truncated multivariate Taylor polynomial with complex coefficients
/// over real variables. Coefficient of multi-index a is d^a f / a!.
class Jet {
 public:
  Jet();
  Jet(double c);  // NOLINT(google-explicit-constructor)
  Jet(cplx c);    // NOLINT(google-explicit-constructor)
  Jet(const JetSpace* space, cplx c);

  static Jet variable(const JetSpace* space, int var, cplx value);

  const JetSpace& space() const { return *space_; }
  const JetSpace* space_ptr() const { return space_; }
  int order() const { return space_->order(); }
  int vars() const { return space_->vars(); }
  std::size_t size() const { return c_.size(); }

  cplx value() const { return c_[0]; }
  cplx operator[](std::size_t i) const { return c_[i]; }
  cplx& operator[](std::size_t i) { return c_[i]; }
  const std::vector<cplx>& coefficients() const { return c_; }

  /// Plain partial derivative d^a f at the expansion point.
  cplx partial(std::span<const int> exps) const;
  /// Exact derivative in one real variable; order drops by one.
  Jet derivative(int var) const;
  Jet truncated(int order) const;
  Jet conj() const;
  bool is_scalar() const { return space_->vars() == 0; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator*=(cplx s);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
  friend Jet operator*(double s, Jet a) { return a *= cplx(s); }

  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet pow(const Jet& a, double p);

 private:
  const JetSpace* space_;
  std::vector<cplx> c_;
};

Jet conj(const Jet& a);
/// |a|^2 = a * conj(a).
Jet abs2(const Jet& a);
Jet real(const Jet& a);

/// Jet of x + i y with x, y seeded as real variables re_var, im_var.
Jet complex_variable(const JetSpace* space, int re_var, int im_var, cplx value);
/// Holomorphic Wirtinger derivative 1/2 (d_x - i d_y).
Jet d_holo(const Jet& f, int re_var, int im_var);
/// Antiholomorphic Wirtinger derivative 1/2 (d_x + i d_y).
Jet d_anti(const Jet& f, int re_var, int im_var);

enum class Slot { base, fiber };

struct ComplexVar {
  Slot slot;
  int index;
  bool operator==(const ComplexVar&) const = default;
};

inline ComplexVar zvar(int i) { return {Slot::base, i}; }
inline ComplexVar xivar(int i) { return {Slot::fiber, i}; }

struct RealVar {
  ComplexVar var;
  bool imaginary;
  bool operator==(const RealVar&) const = default;
};

/// Seeded point (z, xi) of the holomorphic tangent bundle with Jet
/// coordinates over the tracked real variables.
class JetPoint {
 public:
  static JetPoint seed(const CVec& z, const CVec& xi, int order, std::vector<RealVar> tracked);
  static JetPoint seed_all(const CVec& z, const CVec& xi, int order);
  static JetPoint seed_fiber(const CVec& z, const CVec& xi, int order);

  int dim() const { return static_cast<int>(z_.size()); }
  int order() const { return space_->order(); }
  const JetSpace* space() const { return space_; }
  std::span<const Jet> z() const { return z_; }
  std::span<const Jet> xi() const { return xi_; }
  const std::vector<RealVar>& tracked() const { return tracked_; }
  /// Seeded variable position, or -1.
  int real_index(RealVar v) const;

  Jet holo(const Jet& f, ComplexVar v) const;
  Jet anti(const Jet& f, ComplexVar v) const;
  /// d^|holo| dbar^|anti| f at the point.
  cplx wirtinger(const Jet& f, std::span<const ComplexVar> holo, std::span<const ComplexVar> anti) const;

 private:
  JetPoint() = default;
  std::pair<int, int> pair_of(ComplexVar v) const;

  const JetSpace* space_ = nullptr;
  std::vector<RealVar> tracked_;
  std::vector<Jet> z_, xi_;
};

}  // namespace fgbc
