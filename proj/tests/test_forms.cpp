#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "fgbc/calculus.hpp"
#include "fgbc/forms.hpp"

using namespace fgbc;

namespace {

double diff(const ExteriorForm& a, const ExteriorForm& b) { return (a - b).max_abs(); }

ExteriorForm random_form(int n, int degree, std::mt19937_64& rng, int terms = 6) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> mask(0, (1u << (4 * n)) - 1);
  std::vector<ExteriorForm::Term> t;
  while (static_cast<int>(t.size()) < terms) {
    const auto m = mask(rng);
    if (std::popcount(m) == degree) t.push_back({m, {u(rng), u(rng)}});
  }
  return ExteriorForm::from_terms(n, degree, t);
}

CVec vec(std::initializer_list<cplx> v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) r(k++) = x;
  return r;
}

// det(lambda A + B) by expanding every row into its A or B entry.
std::vector<ExteriorForm> det_poly_oracle(const FormMatrix& a, const FormMatrix& b, int dim) {
  const int n = a.size();
  std::vector<ExteriorForm> out;
  for (int j = 0; j <= n; ++j) out.emplace_back(dim, 2 * j);
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(k)];
    const double sign = inversions % 2 ? -1.0 : 1.0;
    for (int choice = 0; choice < (1 << n); ++choice) {
      ExteriorForm acc = ExteriorForm::scalar(dim, sign);
      for (int i = 0; i < n; ++i)
        acc = wedge(acc, (choice >> i & 1) ? a.at(i, p[static_cast<std::size_t>(i)]) : b.at(i, p[static_cast<std::size_t>(i)]));
      out[static_cast<std::size_t>(std::popcount(static_cast<unsigned>(choice)))] += acc;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST(Wedge, RepeatedCovectorVanishes) {
  const auto a = ExteriorForm::covector(2, dz(0));
  EXPECT_TRUE(wedge(a, a).is_zero());
}

TEST(Wedge, OddFormsAnticommute) {
  const auto a = ExteriorForm::covector(1, dz(0)), b = ExteriorForm::covector(1, dzbar(0));
  EXPECT_EQ(diff(wedge(a, b), -wedge(b, a)), 0.0);
  EXPECT_EQ(wedge(a, b).coefficient({dz(0), dzbar(0)}), cplx(1.0));
  EXPECT_EQ(wedge(a, b).coefficient({dzbar(0), dz(0)}), cplx(-1.0));
}

TEST(Contract, BaseVectorIntoAreaForm) {
  const auto f = ExteriorForm::monomial(1, {dz(0), dzbar(0)});
  const TangentVector e(1, LabelSlot::base_holo, vec({1.0}));
  EXPECT_EQ(diff(contract(e, f), ExteriorForm::covector(1, dzbar(0))), 0.0);
}

TEST(Contract, UnrelatedCovectorGivesZero) {
  const TangentVector e(2, LabelSlot::base_holo, vec({1.0, 0.0}));
  EXPECT_TRUE(contract(e, ExteriorForm::covector(2, dz(1))).is_zero());
}

TEST(RealPart, AreaFormIsReal) {
  const auto f = ExteriorForm::monomial(1, {dz(0), dzbar(0)}, I);
  EXPECT_LE(diff(real_part(f), f), 1e-16);
}

TEST(RealPart, HolomorphicCovector) {
  const auto want = 0.5 * (ExteriorForm::covector(1, dz(0)) + ExteriorForm::covector(1, dzbar(0)));
  EXPECT_LE(diff(real_part(ExteriorForm::covector(1, dz(0))), want), 1e-16);
}

TEST(DetPoly, OneByOne) {
  auto a = FormMatrix(1, 1, 2), b = FormMatrix::scalars(CMat::Constant(1, 1, cplx(2.0, 1.0)));
  a.at(0, 0) = ExteriorForm::monomial(1, {dz(0), dzbar(0)}, 3.0);
  const auto d = det_poly(a, b);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].coefficient(0u), cplx(2.0, 1.0));
  EXPECT_EQ(diff(d[1], a.at(0, 0)), 0.0);
}

TEST(DetPoly, ZeroCurvatureLeavesOnlyScalarDeterminant) {
  std::mt19937_64 rng(3);
  const CMat B = CMat::Random(2, 2);
  FormMatrix a(2, 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) a.at(i, k) = ExteriorForm(2, 2);
  const auto d = det_poly(a, FormMatrix::scalars(B));
  EXPECT_NEAR(std::abs(d[0].coefficient(0u) - B.determinant()), 0.0, 1e-15);
  EXPECT_TRUE(d[1].is_zero());
  EXPECT_TRUE(d[2].is_zero());
}

TEST(DetPoly, RejectsOddEntries) {
  FormMatrix a(1, 1, 1);
  a.at(0, 0) = ExteriorForm::covector(1, dz(0));
  EXPECT_THROW(det_poly(a, FormMatrix::scalars(CMat::Identity(1, 1))), DomainError);
}

TEST(DetPoly, MatchesRowExpansionOracle) {
  std::mt19937_64 rng(4);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      FormMatrix a(n, n, 2);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a.at(i, k) = random_form(n, 2, rng, 4);
      const CMat B = CMat::Random(n, n);
      const auto got = det_poly(a, FormMatrix::scalars(B));
      const auto want = det_poly_oracle(a, FormMatrix::scalars(B), n);
      double scale = 0.0;
      for (const auto& w : want) scale = std::max(scale, w.max_abs());
      for (int j = 0; j <= n; ++j) EXPECT_LE(diff(got[static_cast<std::size_t>(j)], want[static_cast<std::size_t>(j)]), 1e-10 * scale);
      EXPECT_LE(diff(got[static_cast<std::size_t>(n)], det(a)), 1e-10 * scale);
      EXPECT_NEAR(std::abs(got[0].coefficient(0u) - B.determinant()), 0.0, 1e-12);
    }
  }
}

TEST(Pullback, BaseCovectorIsFixed) {
  const CMat J = CMat::Random(2, 2), N = CMat::Random(2, 2);
  const auto f = ExteriorForm::covector(2, dz(1));
  EXPECT_EQ(diff(pullback_section(f, J, N), f), 0.0);
}

TEST(Pullback, EulerFieldSendsFiberCovectorToDz) {
  const auto f = ExteriorForm::covector(1, dxi(0));
  const auto g = pullback_section(f, CMat::Identity(1, 1), CMat::Zero(1, 1));
  EXPECT_EQ(diff(g, ExteriorForm::covector(1, dz(0))), 0.0);
}

TEST(Pullback, ConstantFieldKillsFiberCovectors) {
  const auto f = ExteriorForm::monomial(2, {dxi(0), dxibar(1)});
  EXPECT_TRUE(pullback_section(f, CMat::Zero(2, 2), CMat::Zero(2, 2)).is_zero());
}

TEST(Pullback, CommutesWithDbar) {
  // f = c(z, xi) dxi on the total space of C, section xi = X(z) holomorphic.
  const cplx a(0.3, -0.7), b(1.1, 0.2), d(-0.4, 0.5);
  auto c = [&](cplx z, cplx x) { return a * std::conj(z) * x + b * std::conj(x) * x * x + d * z * std::conj(x); };
  auto X = [](cplx z) { return z * z + 0.5 * z; };
  auto dX = [](cplx z) { return 2.0 * z + 0.5; };
  auto mat = [](cplx v) { return CMat::Constant(1, 1, v); };
  const FormField pulled = [&](const CVec& z) {
    return pullback_section(ExteriorForm::covector(1, dxi(0), c(z(0), X(z(0)))), mat(dX(z(0))), mat(0.0));
  };
  for (cplx z0 : {cplx(0.3, 0.4), cplx(-0.6, 0.1)}) {
    const cplx x0 = X(z0);
    // dbar f = dc/dzbar dzbar ^ dxi + dc/dxibar dxibar ^ dxi
    const auto dbar_f = ExteriorForm::monomial(1, {dzbar(0), dxi(0)}, a * x0) +
                        ExteriorForm::monomial(1, {dxibar(0), dxi(0)}, b * x0 * x0 + d * z0);
    const auto want = pullback_section(dbar_f, mat(dX(z0)), mat(0.0));
    const auto got = numeric_d_parts(pulled, vec({z0}), {1e-3, false}).dbar;
    EXPECT_LE(diff(got, want), 1e-5);
    const auto fine = numeric_d_parts(pulled, vec({z0}), {5e-4, false}).dbar;
    EXPECT_LT(diff(fine, want), 0.3 * diff(got, want) + 1e-12);
  }
}

TEST(NumericD, ConstantFieldIsClosed) {
  const FormField f = [](const CVec&) { return ExteriorForm::monomial(2, {dz(0), dzbar(1)}, cplx(2.0, 1.0)); };
  EXPECT_LE(numeric_d(f, vec({0.2, 0.4})).max_abs(), 1e-12);
}

TEST(NumericD, LinearCoefficient) {
  const FormField f = [](const CVec& z) { return ExteriorForm::covector(1, dz(0), z(0).real()); };
  const auto want = ExteriorForm::monomial(1, {dzbar(0), dz(0)}, 0.5);
  EXPECT_LE(diff(numeric_d(f, vec({cplx(0.3, -0.2)})), want), 1e-10);
}

TEST(NumericD, SquareVanishes) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(8);
  for (auto& x : c) x = {u(rng), u(rng)};
  const FormField f = [&](const CVec& z) {
    const cplx w = z(0), v = z(1);
    return ExteriorForm::covector(2, dz(0), c[0] * w * w * std::conj(v) + c[1] * v * v * v) +
           ExteriorForm::covector(2, dzbar(1), c[2] * std::conj(w) * w * v + c[3] * std::norm(v) * v) +
           ExteriorForm::covector(2, dz(1), c[4] * std::conj(w * w * w) + c[5]);
  };
  const FormField df = [&](const CVec& z) { return numeric_d(f, z, {1e-3, false}); };
  for (double h : {1e-3, 5e-4}) EXPECT_LE(numeric_d(df, vec({0.3, cplx(0.1, -0.5)}), {h, false}).max_abs(), h * h);
}

TEST(IntegrateChart, UnitDiskArea) {
  const FormField f = [](const CVec&) { return ExteriorForm::monomial(1, {dz(0), dzbar(0)}, 0.5 * I); };
  EXPECT_NEAR(integrate_chart(f, disk_nodes(0.0, 0.0, 1.0, 8, 16)).real(), pi, 1e-13);
}

TEST(IntegrateChart, ZeroField) {
  const FormField f = [](const CVec&) { return ExteriorForm(1, 2); };
  EXPECT_EQ(integrate_chart(f, disk_nodes(0.0, 0.0, 1.0, 4, 8)), cplx(0.0));
}

TEST(IntegrateChart, UnitBidiskVolume) {
  const FormField f = [](const CVec&) {
    return ExteriorForm::monomial(2, {dz(0), dzbar(0), dz(1), dzbar(1)}, -0.25);
  };
  EXPECT_NEAR(integrate_chart(f, polydisk_nodes(vec({0.0, 0.0}), 0.0, 1.0, 6, 12)).real(), pi * pi, 1e-12);
}

TEST(FormsProperty, GradedAnticommutativity) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4);
    const auto a = random_form(2, p, rng), b = random_form(2, q, rng);
    const double s = (p * q) % 2 ? -1.0 : 1.0;
    EXPECT_LE(diff(wedge(a, b), s * wedge(b, a)), 1e-14);
  }
}

TEST(FormsProperty, ContractionIsAntiderivation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
    const auto a = random_form(2, p, rng), b = random_form(2, q, rng);
    const auto slot = static_cast<LabelSlot>(rng() % 4);
    const TangentVector v(2, slot, vec({{u(rng), u(rng)}, {u(rng), u(rng)}}));
    const double s = p % 2 ? -1.0 : 1.0;
    const auto lhs = contract(v, wedge(a, b));
    const auto rhs = wedge(contract(v, a), b) + s * wedge(a, contract(v, b));
    EXPECT_LE(diff(lhs, rhs), 1e-14);
  }
}

TEST(FormsProperty, EvaluateAgreesWithContraction) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto f = random_form(2, 2, rng);
  const auto v = TangentVector::real_base(vec({{u(rng), u(rng)}, {u(rng), u(rng)}}));
  const auto w = TangentVector::real_fiber(vec({{u(rng), u(rng)}, {u(rng), u(rng)}}));
  const cplx direct = evaluate(f, {v, w});
  const cplx nested = contract(w, contract(v, f)).coefficient(0u);
  EXPECT_NEAR(std::abs(direct - nested), 0.0, 1e-14);
}
