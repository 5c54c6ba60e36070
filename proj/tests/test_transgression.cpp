#include <gtest/gtest.h>

#include "fgbc/atlas.hpp"
#include "fgbc/metrics.hpp"
#include "fgbc/transgression.hpp"

using namespace fgbc;

namespace {

CVec vec(std::initializer_list<cplx> v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) r(k++) = x;
  return r;
}

double diff(const ExteriorForm& a, const ExteriorForm& b) { return (a - b).max_abs(); }

struct Case {
  MetricPtr m;
  FieldPtr X;
  CVec z;
  int chart;
};

std::vector<Case> cases() {
  return {{make_metric("flat-hermitian", 1), make_field("euler", 1), vec({cplx(0.6, 0.8)}), 0},
          {make_metric("fubini-study", 1), make_field("euler", 1), vec({0.5}), 0},
          {make_metric("fubini-study", 1), make_field("euler", 1), vec({cplx(-0.3, 0.7)}), 1},
          {make_metric("fubini-study-product", 2), make_field("euler-product", 2), vec({0.5, cplx(0.3, -0.4)}), 0},
          {make_metric("fs-product-blend", 2, 0.1), make_field("euler-product", 2), vec({cplx(0.4, 0.2), 0.6}), 2},
          {make_metric("quartic-blend", 2, 0.5), make_field("constant", 2), vec({0.2, 0.1}), 0}};
}

}  // namespace

TEST(OmegaX, ContractsToOne) {
  for (const auto& c : cases()) {
    const auto [omega, dbar] = omega_X(*c.m, *c.X, c.z, c.chart);
    EXPECT_NEAR(std::abs(contract_base(c.X->value(c.z, c.chart), omega).coefficient(0u) - 1.0), 0.0, 1e-12) << c.m->name();
    EXPECT_EQ(dbar.degree(), 2);
  }
}

TEST(OmegaX, FlatEulerFieldIsDzOverZ) {
  const cplx z(0.3, -0.9);
  const auto [omega, dbar] = omega_X(*make_metric("flat-hermitian", 1), *make_field("euler", 1), vec({z}));
  EXPECT_LE(diff(omega, ExteriorForm::covector(1, dz(0), 1.0 / z)), 1e-15);
  EXPECT_LE(dbar.max_abs(), 1e-15);
}

TEST(OmegaX, DbarMatchesFiniteDifferences) {
  for (const auto& c : cases()) {
    const auto exact = omega_X(*c.m, *c.X, c.z, c.chart).second;
    const FormField f = [&](const CVec& z) { return omega_X(*c.m, *c.X, z, c.chart).first; };
    const double e1 = diff(numeric_d_parts(f, c.z, {1e-3, false}).dbar, exact);
    const double e2 = diff(numeric_d_parts(f, c.z, {5e-4, false}).dbar, exact);
    EXPECT_LE(e1, 1e-4 * std::max(1.0, exact.max_abs())) << c.m->name();
    EXPECT_TRUE(e2 < 0.3 * e1 || e2 < 1e-10) << c.m->name() << " " << e1 << " " << e2;
  }
}

TEST(OmegaX, PoleAtZero) {
  EXPECT_THROW(omega_X(*make_metric("fubini-study", 1), *make_field("euler", 1), vec({0.0})), PoleError);
}

TEST(Theta, FlatEulerField) {
  const auto t = theta(*make_metric("flat-hermitian", 1), *make_field("euler", 1), vec({cplx(0.2, 0.4)}));
  EXPECT_NEAR(std::abs(t.theta(0, 0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.horizontal(0, 0) + 1.0), 0.0, 1e-15);
  EXPECT_EQ(std::abs(t.vertical(0, 0)), 0.0);
}

TEST(Theta, ConstantFieldOnMinkowskiMetric) {
  for (const auto& m : {make_metric("quartic-minkowski", 2), make_metric("quartic-blend", 2, 0.5)}) {
    const auto t = theta(*m, *make_field("constant", 2), vec({0.3, 0.7}));
    EXPECT_EQ(t.horizontal.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE(t.vertical.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Theta, DirectFormulaMatchesConnectionForms) {
  for (const auto& c : cases()) {
    const CMat a = theta(*c.m, *c.X, c.z, c.chart).theta, b = theta_from_forms(*c.m, *c.X, c.z, c.chart);
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12) << c.m->name();
  }
}

TEST(Theta, HermitianHasNoVerticalPart) {
  for (const auto& c : cases()) {
    if (!c.m->flags().hermitian) continue;
    EXPECT_LE(theta(*c.m, *c.X, c.z, c.chart).vertical.cwiseAbs().maxCoeff(), 1e-13) << c.m->name();
  }
  const Case& blend = cases()[4];
  EXPECT_GT(theta(*blend.m, *blend.X, blend.z, blend.chart).vertical.cwiseAbs().maxCoeff(), 1e-4);
}

TEST(Theta, DbarEqualsContractedCurvature) {
  for (const auto& c : cases()) {
    const double r1 = theta_dbar_residual(*c.m, *c.X, c.z, c.chart, {1e-3, false});
    const double r2 = theta_dbar_residual(*c.m, *c.X, c.z, c.chart, {5e-4, false});
    EXPECT_LE(r1, 1e-5) << c.m->name();
    EXPECT_TRUE(r2 < 0.3 * r1 || r2 < 1e-10) << c.m->name() << " " << r1 << " " << r2;
  }
}

TEST(LimitRatio, ApproachesSignAtZeros) {
  struct Ray {
    MetricPtr m;
    FieldPtr X;
    CVec dir;
    int chart;
  };
  const CMat A = (CMat(2, 2) << cplx(1.0, 0.5), 0.3, -0.2, cplx(0.8, -0.1)).finished();
  const std::vector<Ray> rays{{make_metric("fubini-study", 1), make_field("euler", 1), vec({cplx(0.6, 0.8)}), 0},
                              {make_metric("fubini-study", 1), make_field("euler", 1), vec({1.0}), 1},
                              {make_metric("fubini-study-product", 2), make_field("euler-product", 2), vec({0.6, cplx(0.0, 0.8)}), 3},
                              {make_metric("quartic-blend", 2, 0.5), std::make_shared<LinearField>(A), vec({0.8, 0.6}), 0}};
  for (const auto& r : rays) {
    const double target = r.m->dim() % 2 ? -1.0 : 1.0;
    double prev = 1e300;
    for (double t : {1e-1, 1e-2, 1e-3}) {
      const double e = std::abs(horizontal_degree_ratio(*r.m, *r.X, t * r.dir, r.chart) - target);
      EXPECT_LE(e, 5.0 * t) << r.m->name();
      EXPECT_LE(e, prev) << r.m->name();
      prev = e;
    }
  }
}

TEST(PsiLambda, OneDimensionalExpansion) {
  const auto p = transgression_point(*make_metric("fubini-study", 1), *make_field("euler", 1), vec({cplx(0.5, 0.1)}));
  const cplx c = I / (2.0 * pi);
  ASSERT_EQ(p.psi.size(), 1u);
  EXPECT_LE(diff(p.psi[0], c * p.theta(0, 0) * p.omega), 1e-15);
  EXPECT_LE(diff(p.lambda2, c * p.theta_h(0, 0) * p.omega), 1e-15);
  EXPECT_LE(diff(p.lambda1, c * p.theta_v(0, 0) * p.omega), 1e-15);
}

TEST(PsiLambda, LambdaSplitReassemblesPsiZero) {
  for (const auto& c : cases()) {
    const auto p = transgression_point(*c.m, *c.X, c.z, c.chart);
    EXPECT_LE(diff(p.lambda1 + p.lambda2, p.psi[0]), 1e-13 * std::max(1.0, p.psi[0].max_abs())) << c.m->name();
    if (c.m->flags().hermitian) {
      EXPECT_LE(p.lambda1.max_abs(), 1e-13) << c.m->name();
    }
  }
}

TEST(PsiLambda, QuarticTorusConstantFieldVanishes) {
  const auto p = transgression_point(*make_metric("quartic-minkowski", 2), *make_field("constant", 2), vec({0.4, 0.1}));
  EXPECT_EQ(p.xcn.max_abs(), 0.0);
  for (const auto& psi : p.psi) EXPECT_LE(psi.max_abs(), 1e-15);
}

TEST(VolumeModelModes, FollowMetricFlags) {
  EXPECT_EQ(VolumeModel(*make_metric("fubini-study", 1), integrand_sphere_rule(1)).mode(), VolumeModel::Mode::reference);
  EXPECT_EQ(VolumeModel(*make_metric("quartic-minkowski", 2), integrand_sphere_rule(2)).mode(), VolumeModel::Mode::constant);
  EXPECT_EQ(VolumeModel(*make_metric("fs-product-blend", 2, 0.1), integrand_sphere_rule(2)).mode(),
            VolumeModel::Mode::pointwise);
  EXPECT_EQ(VolumeModel(*make_metric("fubini-study", 1), integrand_sphere_rule(1), {}, true).mode(),
            VolumeModel::Mode::pointwise);
}

TEST(Correction, VanishesInDimensionOne) {
  for (const auto& c : cases()) {
    if (c.m->dim() != 1) continue;
    const VolumeModel vol(*c.m, integrand_sphere_rule(1), {}, true);
    EXPECT_LE(correction_integrand(*c.m, *c.X, c.z, c.chart, vol).max_abs(), 1e-8) << c.m->name();
  }
}

TEST(Correction, HermitianIsExactDerivativeOfPsiOne) {
  const Case c = cases()[3];
  const VolumeModel vol(*c.m, integrand_sphere_rule(2));
  const FormField psi1 = [&](const CVec& z) { return real_part(transgression_point(*c.m, *c.X, z, c.chart).psi[1]); };
  EXPECT_LE(diff(correction_integrand(*c.m, *c.X, c.z, c.chart, vol), numeric_d(psi1, c.z)), 1e-9);
}

TEST(Correction, QuarticTorusVanishes) {
  const auto m = make_metric("quartic-minkowski", 2);
  const VolumeModel vol(*m, integrand_sphere_rule(2));
  for (const CVec& z : {vec({0.1, 0.2}), vec({cplx(0.7, 0.3), cplx(0.5, 0.9)})})
    EXPECT_LE(correction_integrand(*m, *make_field("constant", 2), z, 0, vol).max_abs(), 1e-8);
}

TEST(Residual, FlatEulerOnUnitCircle) {
  const auto m = make_metric("flat-hermitian", 1);
  const VolumeModel vol(*m, integrand_sphere_rule(1));
  const auto r = transgression_residual(*m, *make_field("euler", 1), vec({std::polar(1.0, 0.4)}), 0, vol);
  EXPECT_LE(r.lemma, 1e-6);
  EXPECT_LE(r.identity, 1e-6);
}

TEST(Residual, FubiniStudyAtHalf) {
  const auto m = make_metric("fubini-study", 1);
  const VolumeModel vol(*m, integrand_sphere_rule(1));
  const auto r = transgression_residual(*m, *make_field("euler", 1), vec({0.5}), 0, vol);
  EXPECT_LE(r.lemma, 1e-6);
  EXPECT_LE(r.identity, 1e-6);
}

TEST(Residual, QuarticTorusIsZero) {
  const auto m = make_metric("quartic-minkowski", 2);
  const VolumeModel vol(*m, integrand_sphere_rule(2));
  const auto r = transgression_residual(*m, *make_field("constant", 2), vec({0.3, 0.6}), 0, vol);
  EXPECT_EQ(r.lemma, 0.0);
  EXPECT_LE(r.identity, 1e-12);
}

TEST(Residual, NonHermitianBlendDecaysQuadratically) {
  const Case c = cases()[4];
  const VolumeModel vol(*c.m, integrand_sphere_rule(2), {1e-4, false});
  const auto a = transgression_residual(*c.m, *c.X, c.z, c.chart, vol, {1e-3, false});
  const auto b = transgression_residual(*c.m, *c.X, c.z, c.chart, vol, {5e-4, false});
  EXPECT_LE(a.lemma, 1e-5);
  EXPECT_LE(a.identity, 1e-5);
  EXPECT_GT(a.lemma / b.lemma, 3.0);
  EXPECT_GT(a.identity / b.identity, 3.0);
}

TEST(Tensoriality, FubiniStudyOnUnitCircle) {
  const auto M = make_manifold("cp1");
  const auto m = make_metric("fubini-study", 1);
  const auto X = make_field("euler", 1);
  for (double th : {0.3, 1.7, 4.0}) {
    const auto r = tensoriality_check(*m, *X, M.transition(0, 1), vec({std::polar(1.0, th)}));
    EXPECT_LE(r.theta, 1e-8);
    EXPECT_GT(r.mu, 0.1);
  }
}

TEST(Tensoriality, ProductFubiniStudyOverlaps) {
  const auto M = make_manifold("cp1xcp1");
  const auto m = make_metric("fs-product-blend", 2, 0.1);
  const auto X = make_field("euler-product", 2);
  for (int to = 1; to < 4; ++to) {
    const auto r = tensoriality_check(*m, *X, M.transition(0, to), vec({std::polar(1.0, 0.5), std::polar(1.1, -1.0)}));
    EXPECT_LE(r.theta, 1e-8) << to;
    EXPECT_GT(r.mu, 0.1) << to;
  }
}

TEST(Tensoriality, ConstantLinearChangeIsExact) {
  const MetricPtr base = make_metric("quartic-blend", 2, 0.5);
  const CMat A = (CMat(2, 2) << cplx(1.0, 0.5), 0.3, -0.2, cplx(0.8, -0.1)).finished();
  const FieldPtr X = std::make_shared<LinearField>(A);
  const CMat L = (CMat(2, 2) << 2.0, cplx(0.0, 1.0), 0.5, 1.0).finished();
  const CMat Linv = L.inverse();
  const LinearChangeMetric m2(base, Linv, Linv);
  const LinearChangeField X2(X, L);
  const ChartTransition t{0, 0, [L](const CVec& z) { return CVec(L * z); }, [L](const CVec&) { return L; }};
  const auto r = tensoriality_check(*base, *X, m2, X2, t, vec({0.3, cplx(0.2, 0.4)}));
  EXPECT_LE(r.theta, 1e-13);
}

TEST(BoundaryDegree, FlatPlaneIdentityField) {
  const auto m = make_metric("flat-hermitian", 2);
  const LinearField X(CMat::Identity(2, 2));
  const VolumeModel vol(*m, integrand_sphere_rule(2));
  const double v = boundary_degree(*m, X, {0, vec({0.0, 0.0})}, 0.1, vol);
  EXPECT_NEAR(v / (1.0 / (2.0 * pi * pi)), 1.0, 0.01);
}

TEST(BoundaryDegree, FlatPlaneGenericLinearFieldHasDegreeOne) {
  const auto m = make_metric("flat-hermitian", 2);
  const LinearField X((CMat(2, 2) << cplx(1.0, 0.5), 0.3, -0.2, cplx(0.8, -0.1)).finished());
  const VolumeModel vol(*m, integrand_sphere_rule(2));
  const double v = boundary_degree(*m, X, {0, vec({0.0, 0.0})}, 0.1, vol, {16, 32});
  EXPECT_NEAR(v * 2.0 * pi * pi, 1.0, 1e-6);
}

TEST(BoundaryDegree, FubiniStudyExtrapolation) {
  const auto m = make_metric("fubini-study", 1);
  const auto X = make_field("euler", 1);
  const VolumeModel vol(*m, integrand_sphere_rule(1));
  const std::vector<double> eps{0.2, 0.1, 0.05};
  std::vector<double> values;
  for (double e : eps) values.push_back(boundary_degree(*m, *X, {0, vec({0.0})}, e, vol));
  // exact boundary integral (1 - eps^2)/(1 + eps^2) / (2 pi)
  for (std::size_t k = 0; k < eps.size(); ++k)
    EXPECT_NEAR(values[k], (1 - eps[k] * eps[k]) / (1 + eps[k] * eps[k]) / (2.0 * pi), 1e-12);
  EXPECT_NEAR(extrapolate_eps(eps, values) * 2.0 * pi, 1.0, 0.005);
}

TEST(BoundaryDegree, RejectsSecondZeroInsideBall) {
  const auto m = make_metric("flat-hermitian", 1);
  const VolumeModel vol(*m, integrand_sphere_rule(1));
  EXPECT_THROW(boundary_degree(*m, *make_field("euler", 1), {0, vec({0.05})}, 0.1, vol), DomainError);
}
