#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "fgbc/jet.hpp"

using namespace fgbc;

namespace {

CVec vec(std::initializer_list<cplx> v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) r(k++) = x;
  return r;
}

// Random polynomial in (z, zbar, xi, xibar), n = 2, total degree <= 3.
struct Poly {
  struct Mono {
    cplx c;
    std::array<int, 8> e;  // z1 z2 zb1 zb2 x1 x2 xb1 xb2
  };
  std::vector<Mono> terms;

  explicit Poly(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> slot(0, 7), deg(1, 3);
    for (int t = 0; t < 6; ++t) {
      Mono m{{u(rng), u(rng)}, {}};
      const int d = deg(rng);
      for (int k = 0; k < d; ++k) ++m.e[static_cast<std::size_t>(slot(rng))];
      terms.push_back(m);
    }
  }

  template <typename T, typename Conj>
  T eval(const std::array<T, 4>& v, Conj cj, T one) const {
    const std::array<T, 8> b{v[0], v[1], cj(v[0]), cj(v[1]), v[2], v[3], cj(v[2]), cj(v[3])};
    T sum = one * cplx(0.0);
    for (const auto& m : terms) {
      T p = one * m.c;
      for (std::size_t s = 0; s < 8; ++s)
        for (int k = 0; k < m.e[s]; ++k) p = p * b[s];
      sum = sum + p;
    }
    return sum;
  }
};

cplx plain(const Poly& p, const CVec& z, const CVec& xi) {
  const std::array<cplx, 4> v{z(0), z(1), xi(0), xi(1)};
  return p.eval<cplx>(v, [](cplx a) { return std::conj(a); }, cplx(1.0));
}

Jet jet_of(const Poly& p, const JetPoint& jp) {
  const std::array<Jet, 4> v{jp.z()[0], jp.z()[1], jp.xi()[0], jp.xi()[1]};
  const Jet one(jp.space(), 1.0);
  return p.eval<Jet>(v, [](const Jet& a) { return conj(a); }, one);
}

// Wirtinger derivative by central differences over the real coordinates.
cplx fd_wirtinger(const std::function<cplx(const CVec&, const CVec&)>& f, const CVec& z, const CVec& xi,
                  ComplexVar v, bool anti, double h) {
  auto shifted = [&](cplx d) {
    CVec zz = z, xx = xi;
    (v.slot == Slot::base ? zz : xx)(v.index) += d;
    return f(zz, xx);
  };
  const cplx dx = (shifted(h) - shifted(-h)) / (2.0 * h);
  const cplx dy = (shifted(I * h) - shifted(-I * h)) / (2.0 * h);
  return 0.5 * (anti ? dx + I * dy : dx - I * dy);
}

}  // namespace

TEST(JetSeed, OrderTwoOverOneComplexFiberVariableHasSixSlots) {
  const auto jp = JetPoint::seed(vec({0.0, 0.0}), vec({1.0, 0.0}), 2,
                                 {{xivar(0), false}, {xivar(0), true}});
  EXPECT_EQ(jp.xi()[0].size(), 6u);
}

TEST(JetSeed, RejectsZeroFiberVector) {
  EXPECT_THROW(JetPoint::seed_all(vec({0.0}), vec({0.0}), 2), DomainError);
}

TEST(JetSeed, RejectsOrderAboveCap) {
  EXPECT_THROW(JetPoint::seed_all(vec({0.0}), vec({1.0}), 5), DomainError);
}

TEST(JetWirtinger, MixedSecondDerivativeOfSquaredModulus) {
  const auto jp = JetPoint::seed_fiber(vec({0.0}), vec({cplx(2.0, 1.0)}), 2);
  const Jet f = jp.xi()[0] * conj(jp.xi()[0]);
  const ComplexVar x = xivar(0);
  EXPECT_NEAR(std::abs(jp.wirtinger(f, std::span(&x, 1), std::span(&x, 1)) - 1.0), 0.0, 1e-15);
}

TEST(JetWirtinger, HolomorphicFunctionHasNoAntiDerivative) {
  const auto jp = JetPoint::seed_fiber(vec({0.0}), vec({cplx(0.3, -1.2)}), 2);
  const Jet f = jp.xi()[0] * jp.xi()[0];
  const ComplexVar x = xivar(0);
  EXPECT_EQ(jp.wirtinger(f, {}, std::span(&x, 1)), cplx(0.0));
  EXPECT_NEAR(std::abs(jp.wirtinger(f, std::span(&x, 1), {}) - 2.0 * cplx(0.3, -1.2)), 0.0, 1e-15);
}

TEST(JetWirtinger, QuarticFiberHessianEntry) {
  // oracle: sympy, tests/oracles/derive.py
  const auto jp = JetPoint::seed_fiber(vec({0.0, 0.0}), vec({1.0, 1.0}), 2);
  const Jet f = sqrt(abs2(jp.xi()[0]) * abs2(jp.xi()[0]) + abs2(jp.xi()[1]) * abs2(jp.xi()[1]));
  const ComplexVar x = xivar(0);
  EXPECT_NEAR(std::abs(jp.wirtinger(f, std::span(&x, 1), std::span(&x, 1)) - 3.0 * std::sqrt(2.0) / 4.0), 0.0, 1e-14);
}

TEST(JetProperty, RandomPolynomialsMatchFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  const std::vector<ComplexVar> vars{zvar(0), zvar(1), xivar(0), xivar(1)};
  for (int trial = 0; trial < 25; ++trial) {
    const Poly p(rng);
    const CVec z = vec({{u(rng), u(rng)}, {u(rng), u(rng)}});
    const CVec xi = vec({{u(rng), u(rng)}, {u(rng), u(rng)}});
    const auto jp = JetPoint::seed_all(z, xi, 2);
    const Jet f = jet_of(p, jp);
    auto fn = [&](const CVec& a, const CVec& b) { return plain(p, a, b); };
    for (const auto& a : vars)
      for (bool anti : {false, true}) {
        // first derivatives
        const cplx got = anti ? jp.wirtinger(f, {}, std::span(&a, 1)) : jp.wirtinger(f, std::span(&a, 1), {});
        const cplx want = fd_wirtinger(fn, z, xi, a, anti, 1e-4);
        EXPECT_LE(std::abs(got - want), 1e-6 * std::max(1.0, std::abs(want)));
        // second derivatives: d_b (d_a or dbar_a)
        for (const auto& b : vars) {
          auto inner = [&](const CVec& zz, const CVec& xx) {
            return fd_wirtinger(fn, zz, xx, a, anti, 1e-4);
          };
          const std::array<ComplexVar, 2> pair{a, b};
          const cplx got2 = anti ? jp.wirtinger(f, std::span(&b, 1), std::span(&a, 1))
                                 : jp.wirtinger(f, std::span(pair), {});
          const cplx want2 = fd_wirtinger(inner, z, xi, b, false, 1e-4);
          EXPECT_LE(std::abs(got2 - want2), 1e-6 * std::max(1.0, std::abs(want2)));
        }
      }
  }
}

TEST(JetProperty, MixedPartialsAreSymmetricExactly) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly p(rng);
    const auto jp = JetPoint::seed_all(vec({0.3, cplx(0.1, 0.2)}), vec({cplx(0.5, -0.4), 1.0}), 3);
    const Jet f = jet_of(p, jp);
    const std::array<ComplexVar, 3> h1{zvar(0), xivar(1), zvar(1)}, h2{zvar(1), zvar(0), xivar(1)};
    EXPECT_EQ(jp.wirtinger(f, h1, {}), jp.wirtinger(f, h2, {}));
    const std::array<ComplexVar, 2> a1{xivar(0), zvar(1)}, a2{zvar(1), xivar(0)};
    EXPECT_EQ(jp.wirtinger(f, std::span(h1).first(1), a1), jp.wirtinger(f, std::span(h1).first(1), a2));
  }
}

TEST(JetProperty, ConjugationSwapsHolomorphicAndAntiholomorphic) {
  std::mt19937_64 rng(13);
  const std::vector<ComplexVar> vars{zvar(0), zvar(1), xivar(0), xivar(1)};
  for (int trial = 0; trial < 10; ++trial) {
    const Poly p(rng);
    const auto jp = JetPoint::seed_all(vec({cplx(-0.2, 0.5), 0.7}), vec({0.4, cplx(0.0, 0.9)}), 2);
    const Jet f = jet_of(p, jp);
    const Jet g = conj(f);
    for (const auto& a : vars)
      for (const auto& b : vars) {
        const cplx lhs = jp.wirtinger(g, std::span(&a, 1), std::span(&b, 1));
        const cplx rhs = std::conj(jp.wirtinger(f, std::span(&b, 1), std::span(&a, 1)));
        EXPECT_LE(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(rhs)));
      }
  }
}

TEST(JetArithmetic, ElementaryFunctionsMatchClosedForms) {
  const JetSpace* s = JetSpace::get(1, 4);
  const Jet x = Jet::variable(s, 0, 0.7);
  const int e1[] = {1}, e3[] = {3};
  EXPECT_NEAR(std::abs(exp(x).partial(e3) - std::exp(0.7)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(log(x).partial(e1) - 1.0 / 0.7), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(sqrt(x).partial(e1) - 0.5 / std::sqrt(0.7)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(pow(x, 2.5).partial(e3) - 2.5 * 1.5 * 0.5 * std::pow(0.7, -0.5)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs((1.0 / x).partial(e3) + 6.0 / std::pow(0.7, 4)), 0.0, 1e-10);
  EXPECT_THROW(log(Jet(s, 0.0)), DomainError);
}
