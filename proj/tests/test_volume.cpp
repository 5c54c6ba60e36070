#include <gtest/gtest.h>

#include <random>

#include "fgbc/checks.hpp"
#include "fgbc/metrics.hpp"
#include "fgbc/volume.hpp"

using namespace fgbc;

namespace {

CVec vec(std::initializer_list<cplx> v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) r(k++) = x;
  return r;
}

// Monte Carlo oracle, 1e6 samples: tests/oracles/derive.py quartic_volume_mc
constexpr double kQuarticMc = 19.731998;
constexpr double kQuarticMcSigma = 0.013273;

CMat unitary2() {
  const double c = std::cos(0.7), s = std::sin(0.7);
  CMat u(2, 2);
  u << c * std::polar(1.0, 0.3), -s * std::polar(1.0, -1.1), s * std::polar(1.0, 1.1), c * std::polar(1.0, -0.3);
  return u;
}

}  // namespace

TEST(SigmaDensity, CircleGivesAngleForm) {
  const auto m = make_metric("flat-hermitian", 1);
  for (double th : {0.0, 1.0, 2.5}) {
    const cplx xi = std::polar(1.0, th);
    const auto s = sigma_density(*m, vec({0.3}), vec({xi}));
    EXPECT_NEAR(std::abs(evaluate(s, {TangentVector::real_fiber(vec({I * xi}))}) - 1.0), 0.0, 1e-15);
  }
}

TEST(SigmaDensity, ScaledMetricLeavesDensityUnchanged) {
  const MetricPtr base = make_metric("fubini-study", 1);
  const LinearChangeMetric scaled(base, CMat::Identity(1, 1), CMat::Identity(1, 1), 4.0);
  const CVec z = vec({cplx(0.2, 0.5)}), xi = vec({cplx(0.6, -0.8)});
  EXPECT_LE((sigma_density(scaled, z, xi) - sigma_density(*base, z, xi)).max_abs(), 1e-15);
}

TEST(SigmaDensity, FlatThreeSphereIsEuclideanVolume) {
  const auto m = make_metric("flat-hermitian", 2);
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    CVec xi = vec({{g(rng), g(rng)}, {g(rng), g(rng)}});
    xi.normalize();
    // w unit and Hermitian-orthogonal to xi; (xi, i xi, w, i w) is positively oriented
    const CVec w = vec({-std::conj(xi(1)), std::conj(xi(0))});
    const auto s = sigma_density(*m, vec({0.0, 0.0}), xi);
    const cplx v = evaluate(s, {TangentVector::real_fiber(I * xi), TangentVector::real_fiber(w),
                                TangentVector::real_fiber(I * w)});
    EXPECT_NEAR(v.real(), 1.0, 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
  }
}

TEST(ReferenceVolume, UnitSpheres) {
  EXPECT_DOUBLE_EQ(reference_volume(1), 2.0 * pi);
  EXPECT_DOUBLE_EQ(reference_volume(2), 2.0 * pi * pi);
  EXPECT_NEAR(reference_volume(3), pi * pi * pi, 1e-13);
}

TEST(Volume, HermitianMatchesReference) {
  for (const auto& [m, z] : {std::pair{make_metric("flat-hermitian", 1), vec({0.0})},
                             std::pair{make_metric("fubini-study", 1), vec({cplx(0.3, 0.8)})},
                             std::pair{make_metric("fubini-study-conformal", 1, 0.7), vec({cplx(-0.5, 0.1)})},
                             std::pair{make_metric("flat-hermitian", 2), vec({0.0, 0.0})},
                             std::pair{make_metric("fubini-study-product", 2), vec({0.4, cplx(0.2, -0.9)})}}) {
    const int n = m->dim();
    const auto v = volume(*m, z, SphereRule::standard(n));
    EXPECT_GT(v.vol, 0.0);
    EXPECT_NEAR(v.vol / reference_volume(n), 1.0, 1e-6) << m->name();
  }
}

TEST(Volume, QuarticAgreesWithMonteCarloOracle) {
  const auto m = make_metric("quartic-minkowski", 2);
  const double v = volume_value(*m, vec({0.0, 0.0}), SphereRule::standard(2));
  EXPECT_NEAR(v, kQuarticMc, 4.0 * kQuarticMcSigma);
  // the value is the round sphere's, not 4 pi
  EXPECT_NEAR(v, 2.0 * pi * pi, 1e-6);
  EXPECT_GT(std::abs(v - 4.0 * pi), 1.0);
}

TEST(Volume, MonteCarloRuleCrossCheck) {
  const auto m = make_metric("quartic-minkowski", 2);
  const auto mc = volume(*m, vec({0.0, 0.0}), SphereRule::monte_carlo(2, 1000000, 7));
  EXPECT_GT(mc.error, 0.0);
  EXPECT_NEAR(mc.vol, 2.0 * pi * pi, 4.0 * mc.error);
}

TEST(Volume, ScaleInvariance) {
  const MetricPtr base = make_metric("quartic-blend", 2, 0.5);
  const LinearChangeMetric scaled(base, CMat::Identity(2, 2), CMat::Identity(2, 2), 9.0);
  const auto rule = SphereRule::product(2, 16, 32);
  const CVec z = vec({0.1, 0.2});
  EXPECT_NEAR(volume_value(scaled, z, rule), volume_value(*base, z, rule), 1e-10);
}

TEST(Volume, UnitaryInvariance) {
  for (const auto& name : {"quartic-blend", "fs-product-blend"}) {
    const MetricPtr base = make_metric(name, 2, name == std::string("quartic-blend") ? 0.5 : 0.1);
    const LinearChangeMetric rotated(base, CMat::Identity(2, 2), unitary2());
    const CVec z = vec({0.3, cplx(0.1, -0.2)});
    const auto rule = SphereRule::standard(2);
    EXPECT_NEAR(volume_value(rotated, z, rule), volume_value(*base, z, rule), 1e-8) << name;
  }
}

TEST(Volume, BerwaldConstancyAcrossBasePoints) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto rule = SphereRule::product(2, 16, 32);
  for (const auto& m : {make_metric("quartic-minkowski", 2), make_metric("quartic-blend", 2, 0.5)}) {
    const double v0 = volume_value(*m, vec({0.0, 0.0}), rule);
    for (int k = 0; k < 10; ++k) {
      const CVec z = vec({{u(rng), u(rng)}, {u(rng), u(rng)}});
      EXPECT_NEAR(volume_value(*m, z, rule), v0, 1e-8 * v0) << m->name();
    }
  }
}

TEST(Volume, ErrorEstimateFromCoarserRule) {
  const auto v = volume(*make_metric("quartic-blend", 2, 0.5), vec({0.0, 0.0}), SphereRule::product(2, 8, 16));
  EXPECT_GT(v.error, 0.0);
  EXPECT_LE(std::abs(v.vol - 2.0 * pi * pi), v.error);
  EXPECT_FALSE(v.rule.empty());
}

TEST(LogVolumeDifferential, HermitianVanishes) {
  const auto m = make_metric("fubini-study", 1);
  EXPECT_LE(log_volume_differential(*m, vec({cplx(0.3, 0.2)}), SphereRule::standard(1)).max_abs(), 1e-9);
}

TEST(LogVolumeDifferential, QuarticVanishes) {
  const auto m = make_metric("quartic-minkowski", 2);
  EXPECT_LE(log_volume_differential(*m, vec({0.3, 0.5}), SphereRule::product(2, 8, 16)).max_abs(), 1e-6);
}

TEST(LogVolumeDifferential, ProductBlendIsFiniteAndSmall) {
  // vol(z) is constant for every metric: d log G ^ (dbar del log G)^{n-1} is closed on C^n \ 0
  const auto m = make_metric("fs-product-blend", 2, 2.0);
  const CVec z = vec({0.5, cplx(0.2, -0.4)});
  const double coarse = log_volume_differential(*m, z, SphereRule::product(2, 16, 32)).max_abs();
  const double fine = log_volume_differential(*m, z, SphereRule::product(2, 24, 48)).max_abs();
  EXPECT_TRUE(std::isfinite(coarse));
  EXPECT_LE(fine, 1e-8);
  EXPECT_LT(fine, 0.1 * coarse);
}

TEST(VolumeSweep, BlendIsFlat) {
  const auto sweep = volume_sweep(*make_metric("fs-product-blend", 2, 0.5), 5, SphereRule::product(2, 24, 48));
  ASSERT_EQ(sweep.size(), 5u);
  EXPECT_LE(volume_spread(sweep), 1e-9);
}

TEST(VolumeCache, MemoizesPerChartAndPoint) {
  const auto m = make_metric("fs-product-blend", 2, 0.1);
  VolumeCache cache(*m, SphereRule::product(2, 4, 8));
  const CVec z = vec({0.2, 0.3});
  const double a = cache(z, 0);
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(cache(z, 0), a);
  EXPECT_EQ(cache.size(), 1u);
  cache(z, 1);
  cache(vec({0.2, 0.30000001}), 0);
  EXPECT_EQ(cache.size(), 3u);
  EXPECT_EQ(a, volume_value(*m, z, cache.rule(), 0));
}

TEST(SphereRule, AreasAndCoarsening) {
  EXPECT_NEAR(SphereRule::standard(1).euclidean_area(), 2.0 * pi, 1e-12);
  EXPECT_NEAR(SphereRule::standard(2).euclidean_area(), 2.0 * pi * pi, 1e-10);
  const auto r = SphereRule::product(2, 8, 16);
  EXPECT_LT(r.coarser().nodes().size(), r.nodes().size());
  const auto mc = SphereRule::monte_carlo(2, 1000, 3);
  EXPECT_TRUE(mc.is_monte_carlo());
  EXPECT_EQ(mc.nodes().size(), 1000u);
  EXPECT_EQ(SphereRule::monte_carlo(2, 1000, 3).nodes()[17].point, mc.nodes()[17].point);
}
