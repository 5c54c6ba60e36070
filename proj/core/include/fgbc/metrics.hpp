#pragma once

#include <string>
#include <vector>

#include "fgbc/metric.hpp"

namespace fgbc {

/// G = sum |xi^i|^2.
class FlatHermitian : public FinslerMetric {
 public:
  explicit FlatHermitian(int n) : n_(n) {}
  std::string name() const override { return "flat-hermitian"; }
  int dim() const override { return n_; }
  MetricFlags flags() const override { return {true, true, true}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;

 private:
  int n_;
};

/// Fubini-Study on CP^1, G = |xi|^2 / (1 + |z|^2)^2 in both affine charts.
class FubiniStudy : public FinslerMetric {
 public:
  std::string name() const override { return "fubini-study"; }
  int dim() const override { return 1; }
  MetricFlags flags() const override { return {true, false, true}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;
};

/// exp(kappa s) times Fubini-Study, s = 4|z|^2/(1+|z|^2)^2 (chart invariant).
class ConformalFubiniStudy : public FinslerMetric {
 public:
  explicit ConformalFubiniStudy(double kappa) : kappa_(kappa) {}
  std::string name() const override;
  int dim() const override { return 1; }
  MetricFlags flags() const override { return {true, false, true}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;

 private:
  double kappa_;
};

/// G = (|xi^1|^4 + |xi^2|^4)^{1/2}; degenerate on the fiber axes.
class QuarticMinkowski : public FinslerMetric {
 public:
  std::string name() const override { return "quartic-minkowski"; }
  int dim() const override { return 2; }
  MetricFlags flags() const override { return {false, true, true}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;
  bool on_degeneracy_locus(const CVec& xi, double tol) const override;
  std::string locus_description() const override { return "fiber axes xi^1 = 0 or xi^2 = 0"; }
};

/// G = ((|xi^1|^2 + |xi^2|^2)^2 + lambda (|xi^1|^4 + |xi^2|^4))^{1/2}.
class QuarticBlend : public FinslerMetric {
 public:
  explicit QuarticBlend(double lambda) : lambda_(lambda) {}
  std::string name() const override;
  int dim() const override { return 2; }
  MetricFlags flags() const override { return {lambda_ == 0.0, true, true}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;

 private:
  double lambda_;
};

/// Product Fubini-Study on CP^1 x CP^1, G = A + B with A = |xi^1|^2/(1+|z^1|^2)^2.
/// Chart index bit k selects the affine chart of factor k.
class FubiniStudyProduct : public FinslerMetric {
 public:
  std::string name() const override { return "fubini-study-product"; }
  int dim() const override { return 2; }
  MetricFlags flags() const override { return {true, false, true}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;
};

/// G = ((A + B)^2 + lambda |c_1^2 + c_2^2|^2)^{1/2} on CP^1 x CP^1, where
/// c_k = g_FS(xi^k, V) pairs the fiber with the global field V = d/dz^k:
/// c = h xi in the z chart and c = -h conj(w)^2 xi in the w = 1/z chart,
/// h = (1 + |.|^2)^{-2}. Not Hermitian and not Berwald for lambda > 0.
class FsProductBlend : public FinslerMetric {
 public:
  explicit FsProductBlend(double lambda) : lambda_(lambda) {}
  std::string name() const override;
  int dim() const override { return 2; }
  MetricFlags flags() const override { return {lambda_ == 0.0, false, lambda_ == 0.0}; }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;

 private:
  double lambda_;
};

/// G'(z, xi) = scale * G(A z, B xi).
class LinearChangeMetric : public FinslerMetric {
 public:
  LinearChangeMetric(MetricPtr base, CMat a, CMat b, double scale = 1.0);
  std::string name() const override { return base_->name() + "[linear]"; }
  int dim() const override { return base_->dim(); }
  MetricFlags flags() const override { return base_->flags(); }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;
  bool on_degeneracy_locus(const CVec& xi, double tol) const override;

 private:
  MetricPtr base_;
  CMat a_, b_;
  double scale_;
};

/// Swaps the two affine charts of the CP^1 factors selected by mask (all by default).
class ChartSwappedMetric : public FinslerMetric {
 public:
  explicit ChartSwappedMetric(MetricPtr base, int mask = -1)
      : base_(std::move(base)), mask_(mask < 0 ? (1 << base_->dim()) - 1 : mask) {}
  std::string name() const override { return base_->name(); }
  int dim() const override { return base_->dim(); }
  MetricFlags flags() const override { return base_->flags(); }
  Jet squared_norm(int chart, std::span<const Jet> z, std::span<const Jet> xi) const override;
  bool on_degeneracy_locus(const CVec& xi, double tol) const override { return base_->on_degeneracy_locus(xi, tol); }

 private:
  MetricPtr base_;
  int mask_;
};

/// Built-in metric by name; `name(value)` sets the parameter inline.
MetricPtr make_metric(const std::string& name, int n, double parameter = 0.0);
std::vector<std::string> builtin_metric_names();

}  // namespace fgbc
