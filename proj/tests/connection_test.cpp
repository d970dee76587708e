#include <gtest/gtest.h>

#include <cmath>

#include "ssmc/connection.hpp"
#include "ssmc/errors.hpp"
#include "support.hpp"

using namespace ssmc;
using namespace ssmc::test;

namespace {

const std::vector<double> kOrigin{0.3, 0.1, -0.2, 0.4};

double max_residual(const std::vector<NamedResidual>& rs) {
  double m = 0.0;
  for (const auto& r : rs) m = std::max(m, r.residual);
  return m;
}

}  // namespace

TEST(Connection, ZeroVectorIsLeviCivita) {
  const SSConnection c = connection_at(de_sitter(), field({"0", "0", "0", "0"}), kOrigin);
  EXPECT_EQ(max_abs_diff(c.gamma1, c.frame.gamma), 0.0);
  EXPECT_EQ(c.torsion.max_abs(), 0.0);
  EXPECT_EQ(c.omega, 0.0);
  EXPECT_TRUE(check_concircular(c).holds);
}

TEST(Connection, WrongArityThrows) {
  EXPECT_THROW(connection_at(de_sitter(), field({"1", "0", "0"}, {"t", "x", "y"}), kOrigin),
               Error);
}

// P = ∂_t on −dt² + e^{2t}δ: ∇π = g + π⊗π, so ω = 1 and μ = 1/2.
TEST(Connection, DeSitterGenerator) {
  const SSConnection c = connection_at(de_sitter(), field({"1", "0", "0", "0"}), kOrigin);
  EXPECT_NEAR(c.omega, 1.0, 1e-14);
  EXPECT_NEAR(c.pi_P, -1.0, 1e-15);
  EXPECT_NEAR(c.div_P, 3.0, 1e-14);
  EXPECT_NEAR(s_concircular_mu(c), 0.5, 1e-14);
  EXPECT_NEAR(c.gamma1(1, 1, 0), 0.0, 1e-14);  // Γ¹^x_xt
  EXPECT_NEAR(c.gamma1(0, 1, 1), 0.0, 1e-14);  // Γ¹^t_xx
  EXPECT_TRUE(check_concircular(c).holds);
  EXPECT_TRUE(s_concircular_check(c).holds);
  EXPECT_TRUE(is_P_connection(c));

  const Nabla1P n1 = nabla1_P(c);
  ASSERT_TRUE(n1.closed_form_residual.has_value());
  EXPECT_LE(*n1.closed_form_residual, 1e-12);
  EXPECT_LE(n1.value.max_abs(), 1e-13);

  const LieResult lie = lie_g_nonsym(c);
  EXPECT_TRUE(lie.conformal);
  EXPECT_TRUE(lie.killing);
  EXPECT_LE(lie.lie.max_abs(), 1e-12);
  EXPECT_LE(max_residual(concircular_identity_suite(c)), 1e-12);
}

// π = dx, ∇π = 0: the trace formula gives ω = −1/4 but the condition
// ∇π = ωg + π⊗π has no solution, and L¹_P g = 2g − 2π⊗π is not conformal.
TEST(Connection, MinkowskiSpatialTranslation) {
  const SSConnection c = connection_at(minkowski(), field({"0", "1", "0", "0"}), kOrigin);
  EXPECT_NEAR(c.omega, -0.25, 1e-15);
  EXPECT_EQ(c.torsion(2, 2, 1), 1.0);  // T^y_yx
  EXPECT_EQ(c.torsion(2, 1, 2), -1.0);
  EXPECT_EQ(c.torsion(0, 0, 0), 0.0);
  EXPECT_FALSE(check_concircular(c).holds);
  EXPECT_FALSE(s_concircular_check(c).holds);
  EXPECT_FALSE(nabla1_P(c).closed_form_residual.has_value());
  EXPECT_EQ(closedness_residual(c), 0.0);

  const LieResult lie = lie_g_nonsym(c);
  EXPECT_FALSE(lie.conformal);
  EXPECT_NEAR(lie.lie(0, 0), -2.0, 1e-14);
  EXPECT_NEAR(lie.lie(1, 1), 0.0, 1e-14);
  EXPECT_NEAR(lie.lie(2, 2), 2.0, 1e-14);
}

// P = ∂_t/(1+t) on Minkowski is concircular with ω = 0.
TEST(Connection, MinkowskiRescaledTimeTranslation) {
  const SSConnection c = connection_at(minkowski(), field({"1/(1+t)", "0", "0", "0"}), kOrigin);
  EXPECT_NEAR(c.omega, 0.0, 1e-15);
  EXPECT_TRUE(check_concircular(c).holds);
  EXPECT_LE(max_residual(concircular_identity_suite(c)), 1e-12);
}

// FLRW with a = t and P = ∂_t is concircular only on the slice t = 1.
TEST(Connection, FlrwBothChecksAgree) {
  for (double t : {0.5, 0.8, 1.6, 2.0}) {
    const SSConnection c = connection_at(flrw_t(), field({"1", "0", "0", "0"}), {t, 0.1, 0.2, 0.3});
    EXPECT_NEAR(c.omega, (3.0 / t + 1.0) / 4.0, 1e-14);
    EXPECT_FALSE(check_concircular(c).holds) << t;
    EXPECT_FALSE(s_concircular_check(c).holds) << t;
  }
  const SSConnection c1 = connection_at(flrw_t(), field({"1", "0", "0", "0"}), {1.0, 0.1, 0.2, 0.3});
  EXPECT_TRUE(check_concircular(c1).holds);
  EXPECT_TRUE(s_concircular_check(c1).holds);
}

TEST(Connection, PropertiesOnRandomFields) {
  MetricSpec m = diag_metric({"-1-0.1*x^2", "exp(2*t)", "1+y^2", "exp(t)*(2+sin(z))"});
  m.set(1, 3, ex("0.1*cos(t*y)"));
  const VectorFieldSpec P = field({"1+0.2*x", "sin(t)", "y*z", "0.3"});
  for (const auto& p : random_points(10, 4, -0.7, 0.7, 5)) {
    const SSConnection c = connection_at(m, P, p);
    const std::size_t n = c.dim();
    // Metric compatibility of ∇¹.
    const Tensor nabla1_g = covariant_derivative(TensorField{c.frame.g, c.frame.dg}, c.gamma1);
    EXPECT_LE(nabla1_g.max_abs(), 1e-10);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          EXPECT_EQ(c.torsion(k, i, j), -c.torsion(k, j, i));
          const double expected = (k == i ? c.pi(j) : 0.0) - (k == j ? c.pi(i) : 0.0);
          EXPECT_NEAR(c.torsion(k, i, j), expected, 1e-15);
          EXPECT_NEAR(c.gamma1(k, i, j) - c.gamma1(k, j, i), c.torsion(k, i, j), 1e-13);
        }
      }
    }
    // The trace formula for ω is the contraction of the condition.
    EXPECT_NEAR(c.pi_P, inner(c.frame.g, c.P, c.P), 1e-14);
    // Both forms of the condition agree.
    EXPECT_EQ(check_concircular(c).holds, s_concircular_check(c).holds);
    EXPECT_NEAR(check_concircular(c).residual, s_concircular_check(c).residual, 1e-12);
  }
}

TEST(Connection, LieDerivativesOfDeSitterGenerator) {
  const SSConnection c = connection_at(de_sitter(), field({"1", "0", "0", "0"}), kOrigin);
  // L_P g = 2∇π = 2(g + π⊗π).
  const Tensor lg = lie_P_g(c);
  EXPECT_NEAR(lg(0, 0), 0.0, 1e-14);
  EXPECT_NEAR(lg(1, 1), 2.0 * std::exp(0.6), 1e-13);
  // L_P π = 2(ω + π(P))π = 0.
  EXPECT_LE(lie_P_pi(c).max_abs(), 1e-14);
}
