#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ssmc/curvature.hpp"

namespace ssmc {

/// Perfect-fluid parameters. τ = ρ g + (σ + p) π⊗π, where ρ is an independent
/// coefficient; set `rho_is_pressure` to use ρ := p instead.
struct FluidParams {
  Expr sigma = Expr::number(0.0);
  Expr p = Expr::number(0.0);
  Expr rho = Expr::number(0.0);
  bool rho_is_pressure = false;
  double lambda = 0.0;  ///< cosmological constant Λ
  double k = 1.0;       ///< gravitational constant, > 0

  const Expr& rho_expr() const noexcept { return rho_is_pressure ? p : rho; }
};

/// σ, p, ρ and their gradients at one point.
struct FluidValues {
  double sigma = 0.0;
  double p = 0.0;
  double rho = 0.0;
  std::vector<double> d_sum;  ///< ∂_l (σ + p)
  std::vector<double> d_rho;  ///< ∂_l ρ
};

FluidValues fluid_values(const FluidParams& fp, std::span<const double> point);

/// τ_ij = ρ g_ij + (σ + p) π_i π_j.
Tensor stress_energy(const FluidParams& fp, const PointFrame& f, const Tensor& pi);

struct EfeResidual {
  Tensor residual;          ///< Ric − (r/2) g + Λ g − k τ
  double max_norm = 0.0;    ///< raw max |residual_ij|
  double normalized = 0.0;  ///< max_norm / (1 + max|g_ij|)
};

EfeResidual efe_residual(const CurvatureBundle& b, const FluidParams& fp, const PointFrame& f,
                         const Tensor& pi);

/// (div π⊗π)_j = g^{ik} ∇_i(π_k π_j), Levi-Civita.
Tensor div_pi_pi(const SSConnection& c);

enum class DivMode {
  Reduced,  ///< (σ + p) div π⊗π, gradient terms of σ + p and ρ dropped
  Full,     ///< g^{ik} ∇_i τ_kj
};

Tensor div_tau(const FluidParams& fp, const SSConnection& c, DivMode mode);

struct PhantomPoint {
  double sigma = 0.0;
  double p = 0.0;
  double factor = 0.0;        ///< σ + p
  std::optional<double> w;    ///< p/σ, undefined when σ = 0
  double div_tau = 0.0;       ///< max |reduced div τ|
  double div_pi_pi = 0.0;     ///< max |div π⊗π|
  bool div_tau_zero = false;
  bool barrier = false;       ///< |σ + p| ≤ tol
  bool pi_nonzero = false;
  /// div τ = 0 ⟺ σ + p = 0; vacuous when π = 0.
  bool equivalence = true;
};

struct PhantomReport {
  bool hypothesis = false;      ///< GRW with its P-connection
  std::vector<PhantomPoint> points;
  bool barrier = false;         ///< σ + p = 0 at every point
  bool efe_compatible = false;  ///< reduced div τ = 0 at every point
  bool equivalence = false;     ///< equivalence holds at every point
};

PhantomReport phantom_verdict(const FluidParams& fp, std::span<const SSConnection> points,
                              bool grw_pass, double tol = kDefaultTolerance);

}  // namespace ssmc
