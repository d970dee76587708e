#include <gtest/gtest.h>

#include <cmath>

#include "ssmc/catalog.hpp"
#include "ssmc/classify.hpp"
#include "ssmc/errors.hpp"
#include "support.hpp"

using namespace ssmc;
using namespace ssmc::test;

namespace {

const std::vector<double> kPoint{0.3, 0.1, -0.2, 0.4};

RicciData data_at(const MetricSpec& m, const VectorFieldSpec& P, const std::vector<double>& p) {
  const SSConnection c = connection_at(m, P, p);
  return ricci_data(curvature_family(c), c);
}

}  // namespace

TEST(Verdicts, Conjunction) {
  const Verdict pass{Status::Pass, 1e-12};
  const Verdict fail{Status::Fail, 0.5};
  const Verdict ind{Status::Indeterminate, 0.0};
  EXPECT_EQ(conjoin(std::vector<Verdict>{pass, pass}).status, Status::Pass);
  EXPECT_EQ(conjoin(std::vector<Verdict>{pass, ind}).status, Status::Indeterminate);
  EXPECT_EQ(conjoin(std::vector<Verdict>{ind, fail, pass}).status, Status::Fail);
  EXPECT_EQ(conjoin(std::vector<Verdict>{pass, fail}).residual, 0.5);
  EXPECT_EQ(status_label(Status::Indeterminate), "INDETERMINATE");
  Spread s;
  s.add(2.0, true);
  s.add(-1.0, false);
  s.add(0.5, false);
  EXPECT_EQ(s.min, -1.0);
  EXPECT_EQ(s.width(), 3.0);
}

// ∇_X P = X + π(X)P for the de Sitter generator: ω = 1, η = π.
TEST(Taxonomy, DeSitterGenerator) {
  const VectorPointReport r = classify_vector_at(de_sitter(), field({"1", "0", "0", "0"}), kPoint);
  EXPECT_NEAR(r.fit.omega, 1.0, 1e-12);
  EXPECT_NEAR(r.fit.eta(0), -1.0, 1e-12);
  EXPECT_LE(r.fit.residual, 1e-12);
  EXPECT_LE(r.fit.deta.max_abs(), 1e-10);
  const VectorFlags& f = r.flags;
  EXPECT_TRUE(f.torse_forming.pass());
  EXPECT_FALSE(f.torqued.pass());
  EXPECT_FALSE(f.concircular_fialkow.pass());
  EXPECT_TRUE(f.concircular_yano.pass());
  EXPECT_FALSE(f.recurrent.pass());
  EXPECT_FALSE(f.concurrent.pass());
  EXPECT_FALSE(f.parallel.pass());
  EXPECT_TRUE(f.self_torse_forming.pass());
  EXPECT_FALSE(f.anti_torqued.pass());
  EXPECT_TRUE(f.geodesic.pass());
  EXPECT_TRUE(f.unit_timelike.pass());
  EXPECT_TRUE(f.unit_form.pass());
  EXPECT_FALSE(f.conformal_killing.pass());
  EXPECT_FALSE(f.killing.pass());
  EXPECT_TRUE(taxonomy_violations(f).empty());
}

TEST(Taxonomy, MinkowskiParallelAndConcurrent) {
  const VectorPointReport par = classify_vector_at(minkowski(), field({"0", "1", "0", "0"}), kPoint);
  EXPECT_TRUE(par.flags.parallel.pass());
  EXPECT_TRUE(par.flags.killing.pass());
  EXPECT_TRUE(par.flags.recurrent.pass());
  EXPECT_EQ(par.flags.unit_form.status, Status::Pass);  // g(P,P) = 1

  const VectorPointReport con = classify_vector_at(minkowski(), field({"t", "x", "y", "z"}), kPoint);
  EXPECT_NEAR(con.fit.omega, 1.0, 1e-12);
  EXPECT_TRUE(con.flags.concurrent.pass());
  EXPECT_FALSE(con.flags.parallel.pass());
  EXPECT_TRUE(con.flags.conformal_killing.pass());
  EXPECT_NEAR(con.conformal_factor, 1.0, 1e-12);
  EXPECT_FALSE(con.flags.killing.pass());
  // Not unit, so the unit form is undecidable rather than false.
  EXPECT_EQ(con.flags.unit_form.status, Status::Indeterminate);
}

TEST(Taxonomy, NotTorseForming) {
  const VectorPointReport r = classify_vector_at(minkowski(), field({"x*y", "t", "0", "z^2"}), kPoint);
  EXPECT_FALSE(r.flags.torse_forming.pass());
  EXPECT_GT(r.fit.residual, 1e-3);
  EXPECT_EQ(r.flags.concurrent.status, Status::Fail);
}

TEST(Taxonomy, ZeroFieldIsUnidentifiable) {
  const VectorPointReport r = classify_vector_at(minkowski(), field({"0", "0", "0", "0"}), kPoint);
  EXPECT_FALSE(r.fit.identifiable);
}

TEST(Taxonomy, LatticeHoldsOnManyFields) {
  const std::vector<VectorFieldSpec> fields{
      field({"1", "0", "0", "0"}), field({"t", "x", "y", "z"}),   field({"0", "1", "0", "0"}),
      field({"exp(t)", "0", "0", "0"}), field({"1/(1+t)", "0", "0", "0"}),
      field({"x", "t", "0", "0"}), field({"sin(x)", "y", "1", "t*z"}),
  };
  for (const MetricSpec& m : {minkowski(), de_sitter()}) {
    for (const auto& P : fields) {
      const VectorTaxonomy tax = classify_vector(m, P, random_points(4, 4, -0.5, 0.5, 11));
      for (const auto& pt : tax.points) EXPECT_TRUE(taxonomy_violations(pt.flags).empty());
      EXPECT_TRUE(taxonomy_violations(tax.aggregate).empty());
      EXPECT_EQ(tax.aggregate.named().size(), 14u);
    }
  }
}

TEST(QuasiEinstein, Fits) {
  const QuasiEinsteinFit ds = fit_quasi_einstein(
      frame_at(de_sitter(), kPoint).g, data_at(de_sitter(), field({"1", "0", "0", "0"}), kPoint).ric,
      data_at(de_sitter(), field({"1", "0", "0", "0"}), kPoint).pi);
  EXPECT_NEAR(ds.a, 3.0, 1e-12);
  EXPECT_NEAR(ds.b, 0.0, 1e-12);
  EXPECT_TRUE(ds.einstein);

  for (double t : {0.5, 1.3}) {
    const RicciData d = data_at(flrw_t(), field({"1", "0", "0", "0"}), {t, 0.1, 0.2, 0.3});
    const QuasiEinsteinFit f = fit_quasi_einstein(d.g, d.ric, d.pi);
    EXPECT_NEAR(f.a, 2.0 / (t * t), 1e-11);
    EXPECT_NEAR(f.b, 2.0 / (t * t), 1e-11);
    EXPECT_LE(f.residual, 1e-12);
    EXPECT_FALSE(f.einstein);
  }

  const RicciData mk = data_at(minkowski(), field({"0", "0", "0", "0"}), kPoint);
  const QuasiEinsteinFit z = fit_quasi_einstein(mk.g, mk.ric, mk.pi);
  EXPECT_EQ(z.a, 0.0);
  EXPECT_EQ(z.b, 0.0);
  EXPECT_FALSE(z.b_identifiable);
}

TEST(QuasiEinstein, NonQuasiEinsteinResidual) {
  const Tensor g = frame_at(minkowski(), kPoint).g;
  Tensor a(4, {Slot::Down, Slot::Down});
  a(1, 2) = a(2, 1) = 1.0;
  Tensor pi(4, {Slot::Down});
  pi(0) = 1.0;
  const QuasiEinsteinFit f = fit_quasi_einstein(g, a, pi);
  EXPECT_GT(f.residual, 0.1);
}

TEST(EinsteinType, GrwForms) {
  EXPECT_DOUBLE_EQ(grw_einstein_type_form(Kind::K0, 4).r, 14.25);
  EXPECT_DOUBLE_EQ(grw_einstein_type_form(Kind::K4, 4).r, 21.0);
  EXPECT_DOUBLE_EQ(grw_einstein_type_form(Kind::K5, 4).r, 16.5);
  EXPECT_THROW(grw_einstein_type_form(Kind::K1, 4), Error);

  // Synthetic unit-timelike data: the form at its own r is of Einstein type.
  RicciData d;
  d.g = frame_at(de_sitter(), kPoint).g;
  d.pi = Tensor(4, {Slot::Down});
  d.pi(0) = -1.0;
  for (Kind k : {Kind::K0, Kind::K4, Kind::K5}) {
    const GrwEinsteinTypeForm form = grw_einstein_type_form(k, 4);
    EXPECT_NEAR(4.0 * form.a - form.b, form.r, 1e-12);
    d.ric = d.g * form.a + outer(d.pi, d.pi) * form.b;
    const EquivalenceReport rep = qe_equivalences(k, d, form.r);
    EXPECT_TRUE(rep.einstein_type.pass()) << kind_label(k);
    EXPECT_TRUE(rep.form.pass()) << kind_label(k);
    EXPECT_TRUE(rep.consistent);
    EXPECT_LE(max_abs_diff(quasi_einstein_form(k, d, form.r), d.ric), 1e-12);
  }
  // An Einstein metric is none of them.
  d.ric = d.g * 3.0;
  for (Kind k : {Kind::K0, Kind::K4, Kind::K5}) {
    const EquivalenceReport rep = qe_equivalences(k, d, 12.0);
    EXPECT_FALSE(rep.einstein_type.pass());
    EXPECT_FALSE(rep.form.pass());
    EXPECT_TRUE(rep.consistent);
  }
  EXPECT_THROW(quasi_einstein_form(Kind::K2, d, 12.0), Error);
}

TEST(EinsteinType, BundleAndDataAgree) {
  const SSConnection c = connection_at(de_sitter(), field({"1", "0", "0", "0"}), kPoint);
  const CurvatureBundle b = curvature_family(c);
  const RicciData d = ricci_data(b, c);
  for (Kind k : kAllKinds) {
    EXPECT_EQ(einstein_type(k, b).status, einstein_type(k, d).status) << kind_label(k);
  }
  EXPECT_TRUE(einstein_type(Kind::G, b).pass());
  EXPECT_TRUE(einstein_type(Kind::K1, b).pass());
  EXPECT_FALSE(einstein_type(Kind::K0, b).pass());
}

TEST(Grw, Detection) {
  const auto pts = random_points(6, 4, -0.5, 0.5, 2);
  EXPECT_TRUE(grw_detect(de_sitter(), field({"1", "0", "0", "0"}), pts).verdict.pass());
  const BuiltinModel generic = builtin("grw-generic", {});
  EXPECT_TRUE(grw_detect(generic.metric, generic.P, pts).verdict.pass());
  EXPECT_FALSE(grw_detect(minkowski(), field({"1", "0", "0", "0"}), pts).verdict.pass());
  EXPECT_FALSE(grw_detect(flrw_t(), field({"1", "0", "0", "0"}),
                          std::vector<std::vector<double>>{{0.5, 0, 0, 0}})
                   .verdict.pass());
  // Riemannian signature never qualifies.
  const MetricSpec eucl = diag_metric({"1", "exp(2*t)", "exp(2*t)", "exp(2*t)"});
  EXPECT_FALSE(grw_detect(eucl, field({"1", "0", "0", "0"}), pts).verdict.pass());
}

TEST(Grw, IdentitySuiteAndNonvanishing) {
  const BuiltinModel generic = builtin("grw-generic", {});
  for (const auto& p : random_points(4, 4, -0.5, 0.5, 4)) {
    const SSConnection c = connection_at(generic.metric, generic.P, p);
    const CurvatureBundle b = curvature_family(c);
    const auto suite = grw_identity_suite(b, c);
    ASSERT_TRUE(suite.has_value());
    EXPECT_GE(suite->size(), 15u);
    for (const auto& r : *suite) EXPECT_LE(r.residual, 1e-8) << r.name;
    for (const auto& r : grw_nonvanishing(b, c)) EXPECT_GE(r.residual, 1.0) << r.name;

    const PerfectFluidFit pf = perfect_fluid_kind(Kind::G, b, c);
    ASSERT_TRUE(pf.a_minus_b_residual.has_value());
    EXPECT_LE(*pf.a_minus_b_residual, 1e-8);
    EXPECT_NEAR(pf.fit.a - pf.fit.b, 3.0, 1e-8);
  }
  const SSConnection off = connection_at(minkowski(), field({"0", "1", "0", "0"}), kPoint);
  EXPECT_FALSE(grw_identity_suite(curvature_family(off), off).has_value());
}
