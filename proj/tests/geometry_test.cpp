#include <gtest/gtest.h>

#include <cmath>

#include "ssmc/errors.hpp"
#include "ssmc/geometry.hpp"
#include "ssmc/validation/fd_oracle.hpp"
#include "support.hpp"

using namespace ssmc;
using namespace ssmc::test;

TEST(Frame, MinkowskiIsFlat) {
  const PointFrame f = frame_at(minkowski(), std::vector<double>{0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(f.gamma.max_abs(), 0.0);
  EXPECT_EQ(f.signature.pluses, 3);
  EXPECT_EQ(f.signature.minuses, 1);
  EXPECT_TRUE(f.signature.lorentzian());
  EXPECT_EQ(lc_riemann(f).max_abs(), 0.0);
  EXPECT_EQ(lc_ricci(f).max_abs(), 0.0);
  EXPECT_EQ(lc_scalar(f), 0.0);
}

// For −dt² + e^{2t}δ: Γ^t_xx = e^{2t}, Γ^x_tx = 1.
TEST(Frame, DeSitterChristoffel) {
  const PointFrame f = frame_at(de_sitter(), std::vector<double>{0.3, 0.0, 0.0, 0.0});
  const double e06 = 1.8221188003905089;  // e^{0.6}
  EXPECT_NEAR(f.gamma(0, 1, 1), e06, 1e-14);
  EXPECT_NEAR(f.gamma(1, 0, 1), 1.0, 1e-15);
  EXPECT_NEAR(f.gamma(1, 1, 0), 1.0, 1e-15);
  EXPECT_EQ(f.gamma(0, 0, 0), 0.0);
  // ∂_t Γ^t_xx = 2 e^{2t}.
  EXPECT_NEAR(f.dgamma(0, 1, 1, 0), 2 * e06, 1e-13);
}

TEST(Frame, SingularMetricRejected) {
  const std::vector<std::string> tx{"t", "x"};
  const MetricSpec m = diag_metric({"0", "1"}, tx);
  EXPECT_THROW(frame_at(m, std::vector<double>{0.0, 0.0}), SingularMetricError);
}

TEST(Frame, Invariants) {
  MetricSpec m = diag_metric({"-1-0.1*x^2", "exp(2*t)", "1+y^2", "exp(t)*(2+sin(z))"});
  m.set(1, 2, ex("0.2*sin(t*x)"));
  for (const auto& p : random_points(8, 4, -0.8, 0.8)) {
    const PointFrame f = frame_at(m, p);
    const std::size_t n = 4;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double id = 0.0;
        for (std::size_t k = 0; k < n; ++k) id += f.ginv(i, k) * f.g(k, j);
        EXPECT_NEAR(id, i == j ? 1.0 : 0.0, 1e-12);
        for (std::size_t k = 0; k < n; ++k) {
          EXPECT_EQ(f.gamma(k, i, j), f.gamma(k, j, i));
          for (std::size_t l = 0; l < n; ++l) {
            EXPECT_EQ(f.d2g(i, j, k, l), f.d2g(i, j, l, k));
            EXPECT_EQ(f.d2g(i, j, k, l), f.d2g(j, i, k, l));
          }
        }
      }
    }
    // Metricity of the Levi-Civita connection.
    EXPECT_LE(covariant_derivative(TensorField{f.g, f.dg}, f.gamma).max_abs(), 1e-10);
    // Antisymmetry in the direction pair and the first Bianchi identity.
    const Tensor R = lc_riemann(f);
    double bianchi = 0.0, anti = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            anti = std::max(anti, std::abs(R(l, k, i, j) + R(l, k, j, i)));
            bianchi = std::max(bianchi, std::abs(R(l, k, i, j) + R(l, i, j, k) + R(l, j, k, i)));
          }
        }
      }
    }
    EXPECT_EQ(anti, 0.0);
    EXPECT_LE(bianchi, 1e-9);
  }
}

// R_ijkl = g_ik g_jl − g_il g_jk in the storage (l,k,i,j) = R^l_kij means
// g_lm R^m_kij = g_li g_kj − g_lj g_ki for unit Hubble rate.
TEST(Curvature, DeSitterConstantCurvature) {
  for (const auto& p : random_points(4, 4, -1, 1)) {
    const PointFrame f = frame_at(de_sitter(), p);
    const Tensor R = lc_riemann(f);
    for (std::size_t l = 0; l < 4; ++l) {
      for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < 4; ++i) {
          for (std::size_t j = 0; j < 4; ++j) {
            double low = 0.0;
            for (std::size_t m = 0; m < 4; ++m) low += f.g(l, m) * R(m, k, i, j);
            EXPECT_NEAR(low, f.g(l, i) * f.g(k, j) - f.g(l, j) * f.g(k, i), 1e-12);
          }
        }
      }
    }
  }
}

TEST(Curvature, DeSitterRicci) {
  const double t = 0.4;
  const PointFrame f = frame_at(de_sitter(), std::vector<double>{t, 0.1, 0.2, 0.3});
  const Tensor ric = lc_ricci(f);
  // Ric_tt = −3 f''/f = −3, Ric_xx = f f'' + 2 f'^2 = 3 e^{2t}.
  EXPECT_NEAR(ric(0, 0), -3.0, 1e-13);
  EXPECT_NEAR(ric(1, 1), 3.0 * std::exp(2 * t), 1e-13);
  EXPECT_NEAR(ric(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(lc_scalar(f), 12.0, 1e-13);
}

TEST(Curvature, FlrwLinearWarp) {
  for (double t : {0.5, 1.0, 1.7}) {
    const PointFrame f = frame_at(flrw_t(), std::vector<double>{t, 0.1, 0.2, 0.3});
    const Tensor ric = lc_ricci(f);
    EXPECT_NEAR(ric(0, 0), 0.0, 1e-13);
    EXPECT_NEAR(ric(1, 1), 2.0, 1e-13);
    EXPECT_NEAR(lc_scalar(f), 6.0 / (t * t), 1e-12);
  }
}

TEST(Oracle, JetAgreesWithFiniteDifferences) {
  MetricSpec m = diag_metric({"-1", "exp(2*t)*(1+x^2)", "exp(2*t)", "exp(2*t)*cosh(y)"});
  m.set(2, 3, ex("0.1*sin(t+z)"));
  for (const auto& p : random_points(6, 4, -0.9, 0.9)) {
    const PointFrame f = frame_at(m, p);
    EXPECT_LE(max_abs_diff(f.gamma, validation::fd_christoffel(m, p, 1e-5)), 1e-6);
    EXPECT_LE(max_abs_diff(lc_riemann(f), validation::fd_riemann(m, p, 1e-5)), 1e-6);
  }
}

TEST(CovariantDerivative, ConstantScalarAndOrder) {
  const PointFrame f = frame_at(de_sitter(), std::vector<double>{0.2, 0, 0, 0});
  const std::vector<Expr> c{ex("3")};
  const TensorField s = field_from_exprs(c, {}, f.point);
  EXPECT_EQ(covariant_derivative(s, f.gamma).max_abs(), 0.0);

  // ∇_i V^k for V = ∂_t: ∇_x V^x = Γ^x_xt = 1, derivative index last.
  const std::vector<Expr> v{ex("1"), ex("0"), ex("0"), ex("0")};
  const Tensor nv = covariant_derivative(field_from_exprs(v, {Slot::Up}, f.point), f.gamma);
  EXPECT_NEAR(nv(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(nv(0, 0), 0.0, 1e-15);
}

TEST(Tensor, Algebra) {
  Tensor a(2, {Slot::Down});
  Tensor b(2, {Slot::Down});
  a(0) = 1;
  a(1) = 2;
  b(0) = 3;
  b(1) = -1;
  const Tensor o = outer(a, b);
  EXPECT_EQ(o.rank(), 2u);
  EXPECT_EQ(o(1, 0), 6.0);
  EXPECT_EQ((a + b)(1), 1.0);
  EXPECT_EQ((a * 2.0)(1), 4.0);
  EXPECT_EQ(max_abs_diff(a, b), 3.0);
  EXPECT_EQ(o.size(), 4u);
}
