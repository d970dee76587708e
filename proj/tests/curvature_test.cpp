#include <gtest/gtest.h>

#include <cmath>

#include "ssmc/catalog.hpp"
#include "ssmc/curvature.hpp"
#include "support.hpp"

using namespace ssmc;
using namespace ssmc::test;

namespace {

const std::vector<double> kPoint{0.3, 0.1, -0.2, 0.4};

SSConnection de_sitter_generator(const std::vector<double>& p = kPoint) {
  return connection_at(de_sitter(), field({"1", "0", "0", "0"}), p);
}

}  // namespace

TEST(Curvature, Labels) {
  EXPECT_EQ(kind_label(Kind::G), "g");
  EXPECT_EQ(kind_label(Kind::K0), "0");
  EXPECT_EQ(kind_label(Kind::K5), "5");
}

TEST(Curvature, ZeroVectorCollapsesToLeviCivita) {
  const SSConnection c = connection_at(de_sitter(), field({"0", "0", "0", "0"}), kPoint);
  const CurvatureBundle b = curvature_family(c);
  for (Kind k : kTorsionKinds) {
    EXPECT_LE(max_abs_diff(b[k].riemann, b[Kind::G].riemann), 1e-12) << kind_label(k);
    EXPECT_LE(max_abs_diff(b[k].ricci, b[Kind::G].ricci), 1e-12) << kind_label(k);
    EXPECT_NEAR(b[k].scalar, 12.0, 1e-11);
  }
  EXPECT_EQ(b.nabla1_torsion.max_abs(), 0.0);
}

// De Sitter with its P-connection: Ric¹ = 0, Ric⁰ = −¾π⊗π.
TEST(Curvature, DeSitterFamily) {
  const SSConnection c = de_sitter_generator();
  const CurvatureBundle b = curvature_family(c);
  EXPECT_NEAR(b[Kind::G].scalar, 12.0, 1e-12);
  EXPECT_LE(b[Kind::K1].ricci.max_abs(), 1e-12);
  EXPECT_NEAR(b[Kind::K1].scalar, 0.0, 1e-12);
  EXPECT_LE(max_abs_diff(b[Kind::K0].ricci, outer(c.pi, c.pi) * -0.75), 1e-12);
  EXPECT_NEAR(b[Kind::K0].scalar, 0.75, 1e-12);
  EXPECT_NEAR(b[Kind::K4].scalar, 3.0, 1e-12);
  EXPECT_LE(max_abs_diff(b[Kind::K2].ricci, b[Kind::K3].ricci), 1e-12);
}

TEST(Curvature, EinsteinTensorsAreTraceless) {
  const BuiltinModel m = builtin("grw-generic", {});
  for (const auto& p : random_points(5, 4, -0.8, 0.8, 3)) {
    const SSConnection c = connection_at(m.metric, m.P, p);
    const CurvatureBundle b = curvature_family(c);
    for (Kind k : kAllKinds) {
      EXPECT_NEAR(trace_g(b.ginv, b[k].einstein), 0.0, 1e-10) << kind_label(k);
      EXPECT_NEAR(trace_g(b.ginv, b[k].ricci), b[k].scalar, 1e-10) << kind_label(k);
    }
  }
}

// Assembled curvature matches the closed forms for concircular generators.
TEST(Curvature, ClosedFormsForConcircularGenerators) {
  struct Case {
    MetricSpec metric;
    VectorFieldSpec P;
  };
  const BuiltinModel grw = builtin("grw-generic", {});
  const std::vector<Case> cases{
      {de_sitter(), field({"1", "0", "0", "0"})},
      {grw.metric, grw.P},
      {minkowski(), field({"1/(1+t)", "0", "0", "0"})},
  };
  for (const auto& cs : cases) {
    for (const auto& p : random_points(4, 4, -0.5, 0.5, 9)) {
      const SSConnection c = connection_at(cs.metric, cs.P, p);
      ASSERT_TRUE(check_concircular(c).holds);
      const CurvatureBundle b = curvature_family(c);
      const double scale = c.frame.residual_scale();
      for (Kind k : kAllKinds) {
        const double rs = 1.0 + b[Kind::G].ricci.max_abs();
        EXPECT_LE(max_abs_diff(b[k].ricci, closed_form_ricci(k, c)) / (scale * rs), 1e-9)
            << kind_label(k);
        EXPECT_NEAR(b[k].scalar, closed_form_scalar(k, c), 1e-8 * (1 + std::abs(b[k].scalar)))
            << kind_label(k);
      }
      const EinsteinRelations er = einstein_relations(b, c);
      EXPECT_TRUE(er.invariant);
      ASSERT_EQ(er.residuals.size(), 6u);
      for (const auto& r : er.residuals) EXPECT_LE(r.residual, 1e-9) << r.name;
    }
  }
}

TEST(Curvature, OnlyAsPrintedReproducesRic0) {
  const R0VariantReport r = r0_variant_report(de_sitter_generator());
  EXPECT_EQ(r.canonical, R0Variant::AsPrinted);
  EXPECT_LE(r.as_printed, 1e-12);
  // Raw error 3/4 on the tt component, normalised by 1 + e^{0.6}.
  EXPECT_NEAR(r.single_quarter, 0.75 / (1.0 + std::exp(0.6)), 1e-9);
}

// Only the curvature of a connection and the two symmetrised variants are
// skew in (X, Y); kinds 3, 4, 5 carry a one-sided ∇¹T term.
TEST(Curvature, DirectionAntisymmetry) {
  const SSConnection c = connection_at(flrw_t(), field({"1", "x", "0", "t*y"}), {0.9, 0.2, 0.1, 0.3});
  const CurvatureBundle b = curvature_family(c);
  auto skew = [&](Kind k) {
    const Tensor& R = b[k].riemann;
    double anti = 0.0;
    for (std::size_t l = 0; l < 4; ++l)
      for (std::size_t q = 0; q < 4; ++q)
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            anti = std::max(anti, std::abs(R(l, q, i, j) + R(l, q, j, i)));
    return anti;
  };
  for (Kind k : {Kind::G, Kind::K0, Kind::K1, Kind::K2}) EXPECT_LE(skew(k), 1e-12) << kind_label(k);
  for (Kind k : {Kind::K3, Kind::K4, Kind::K5}) EXPECT_GT(skew(k), 0.1) << kind_label(k);
}

TEST(Curvature, TracelessPart) {
  const PointFrame f = frame_at(de_sitter(), kPoint);
  const Tensor t = traceless(f.g * 5.0, f.g, f.ginv);
  EXPECT_LE(t.max_abs(), 1e-13);
}
