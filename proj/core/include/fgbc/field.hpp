#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "fgbc/jet.hpp"

namespace fgbc {

struct FieldZero {
  int chart = 0;
  CVec point;
};

/// Holomorphic vector field given chartwise by components X^i(z).
class HolomorphicField {
 public:
  virtual ~HolomorphicField() = default;
  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  /// Components as holomorphic expressions of the chart coordinates.
  virtual std::vector<Jet> components(int chart, std::span<const Jet> z) const = 0;
  /// Complete zero list, each zero in the chart whose origin-centered balls excise it.
  virtual std::vector<FieldZero> zeros() const = 0;

  CVec value(const CVec& z, int chart = 0) const;
  /// mu(i, j) = dX^i / dz^j.
  CMat jacobian(const CVec& z, int chart = 0) const;
  /// max |dX^i / dzbar^j|, should vanish.
  double holomorphy_residual(const CVec& z, int chart = 0) const;
};

using FieldPtr = std::shared_ptr<const HolomorphicField>;

/// Constant field lambda on a torus or flat chart.
class ConstantField final : public HolomorphicField {
 public:
  explicit ConstantField(CVec lambda) : lambda_(std::move(lambda)) {}
  std::string name() const override { return "constant"; }
  int dim() const override { return static_cast<int>(lambda_.size()); }
  std::vector<Jet> components(int chart, std::span<const Jet> z) const override;
  std::vector<FieldZero> zeros() const override { return {}; }

 private:
  CVec lambda_;
};

/// z^k d/dz^k on (CP^1)^n; in the chart w = 1/z the component is -w.
/// Chart bit k selects the chart of factor k. Zeros at every chart origin.
class EulerField final : public HolomorphicField {
 public:
  explicit EulerField(int n) : n_(n) {}
  std::string name() const override { return n_ == 1 ? "euler" : "euler-product"; }
  int dim() const override { return n_; }
  std::vector<Jet> components(int chart, std::span<const Jet> z) const override;
  std::vector<FieldZero> zeros() const override;

 private:
  int n_;
};

/// z^2 d/dz on CP^1: a double zero at 0, component -1 in the chart at infinity.
class SquareField final : public HolomorphicField {
 public:
  std::string name() const override { return "z-squared"; }
  int dim() const override { return 1; }
  std::vector<Jet> components(int chart, std::span<const Jet> z) const override;
  std::vector<FieldZero> zeros() const override;
};

/// X = A z on C^n, single zero at the origin.
class LinearField final : public HolomorphicField {
 public:
  explicit LinearField(CMat a) : a_(std::move(a)) {}
  std::string name() const override { return "linear"; }
  int dim() const override { return static_cast<int>(a_.rows()); }
  std::vector<Jet> components(int chart, std::span<const Jet> z) const override;
  std::vector<FieldZero> zeros() const override;

 private:
  CMat a_;
};

/// Same field with chart indices flipped by a bit mask.
class ChartSwappedField final : public HolomorphicField {
 public:
  ChartSwappedField(FieldPtr base, int mask) : base_(std::move(base)), mask_(mask) {}
  std::string name() const override { return base_->name() + "-swapped"; }
  int dim() const override { return base_->dim(); }
  std::vector<Jet> components(int chart, std::span<const Jet> z) const override {
    return base_->components(chart ^ mask_, z);
  }
  std::vector<FieldZero> zeros() const override;

 private:
  FieldPtr base_;
  int mask_;
};

/// The field in coordinates z' = L z: X'(z') = L X(L^{-1} z').
class LinearChangeField final : public HolomorphicField {
 public:
  LinearChangeField(FieldPtr base, CMat l);
  std::string name() const override { return base_->name() + "-linear-change"; }
  int dim() const override { return base_->dim(); }
  std::vector<Jet> components(int chart, std::span<const Jet> z) const override;
  std::vector<FieldZero> zeros() const override;

 private:
  FieldPtr base_;
  CMat l_, linv_;
};

/// Names: constant, euler, euler-product, z-squared, identity.
FieldPtr make_field(const std::string& name, int n);
std::vector<std::string> builtin_field_names();

/// Coordinate change between two charts with its Jacobian J(i, j) = dz'^i / dz^j.
struct ChartTransition {
  int from = 0;
  int to = 0;
  std::function<CVec(const CVec&)> map;
  std::function<CMat(const CVec&)> jacobian;
};

}  // namespace fgbc
