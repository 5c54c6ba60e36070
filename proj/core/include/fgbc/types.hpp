#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fgbc {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx I{0.0, 1.0};

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: precondition violated by the caller.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fiber Hessian singular or point on a declared degeneracy locus.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a zero of the vector field.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Dense n x n x n array, index order as written.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n)) {}

  int dim() const { return n_; }
  cplx& operator()(int a, int b, int c) { return data_[(a * n_ + b) * n_ + c]; }
  cplx operator()(int a, int b, int c) const { return data_[(a * n_ + b) * n_ + c]; }
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<cplx> data_;
};

/// Dense n^4 array.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n)) {}

  int dim() const { return n_; }
  cplx& operator()(int a, int b, int c, int d) { return data_[((a * n_ + b) * n_ + c) * n_ + d]; }
  cplx operator()(int a, int b, int c, int d) const { return data_[((a * n_ + b) * n_ + c) * n_ + d]; }
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<cplx> data_;
};

inline double Tensor3::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

inline double Tensor4::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::string format_point(const CVec& v);

}  // namespace fgbc
