#pragma once

#include <exception>
#include <functional>
#include <span>
#include <vector>

#include "fgbc/types.hpp"

namespace fgbc {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int n, double a, double b);
/// Equal-weight rule for periodic integrands, nodes at a + (k + offset) h.
Rule1D periodic_trapezoid(int n, double a, double b, double offset = 0.5);

/// Neumaier compensated accumulator.
class NeumaierSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexNeumaierSum {
 public:
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_, im_;
};

double compensated_sum(std::span<const double> xs);
cplx compensated_sum(std::span<const cplx> xs);

/// Sets the worker count for node-parallel loops (0 keeps the default).
void set_thread_count(int threads);

/// Evaluates f(0..count-1) in parallel into indexed slots. The first
/// exception by index is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, F&& f) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = f(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Quadrature node for integrating a d-form: point, d real tangent
/// directions (complex components), weight with orientation folded in.
struct FormNode {
  CVec point;
  std::vector<CVec> tangents;
  double weight;
};

using NodeSet = std::vector<FormNode>;

/// Real determinant of column vectors given by complex components.
double real_determinant(const std::vector<CVec>& columns);

/// Annulus r_in <= |z - c| <= r_out in C, polar GL x trapezoid.
NodeSet disk_nodes(cplx center, double r_in, double r_out, int n_r, int n_theta);
/// Fundamental domain [0,1]^{2n} of a square torus, midpoint trapezoid.
NodeSet torus_nodes(int n, int m);
/// Product of annuli in C^2.
NodeSet polydisk_nodes(const CVec& center, double r_in, double r_out, int n_r, int n_theta);
/// Spherical shell r_in <= |z - c| <= r_out in C^n (n = 1, 2).
NodeSet shell_nodes(const CVec& center, double r_in, double r_out, int n_r, int n_eta, int n_phi);
/// Unit polydisk {|z^i| <= 1} minus the ball |z| < r_in (n = 1, 2).
NodeSet polydisk_minus_ball_nodes(int n, double r_in, int n_r, int n_eta, int n_phi);
/// Sphere |z - c| = r in C^n with outward boundary orientation (n = 1, 2).
/// n = 1 uses n_phi angular nodes; n = 2 uses Hopf angles.
NodeSet sphere_nodes(const CVec& center, double radius, int n_eta, int n_phi);

}  // namespace fgbc
