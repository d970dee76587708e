#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssmc/geometry.hpp"

namespace ssmc {

/// Default residual tolerance (residuals are normalised by 1 + max|g_ij|).
inline constexpr double kDefaultTolerance = 1e-8;

/// A residual with the name of the identity it measures.
struct NamedResidual {
  std::string name;
  double residual = 0.0;
};

/// Semi-symmetric metric connection generated by P at one point:
///   ∇¹_X Y = ∇_X Y + π(Y) X − g(X,Y) P,   π = g(·, P).
/// Coefficient layout gamma1(k,i,j) = Γ¹^k_ij with i the direction X and j
/// the argument Y; torsion(k,i,j) = Γ¹^k_ij − Γ¹^k_ji = π_j δ^k_i − π_i δ^k_j.
struct SSConnection {
  PointFrame frame;
  Tensor P;        ///< P^k
  Tensor dP;       ///< dP(k,l) = ∂_l P^k
  Tensor pi;       ///< π_i
  Tensor dpi;      ///< dpi(i,l) = ∂_l π_i
  Tensor gamma1;   ///< Γ¹^k_ij
  Tensor dgamma1;  ///< ∂_l Γ¹^k_ij at (k,i,j,l)
  Tensor torsion;  ///< T^k_ij
  Tensor dtorsion; ///< ∂_l T^k_ij at (k,i,j,l)
  double div_P = 0.0;
  double pi_P = 0.0;  ///< π(P) = g(P,P)
  double omega = 0.0; ///< (div P − π(P)) / n

  std::size_t dim() const noexcept { return frame.dim(); }
};

SSConnection build_connection(const PointFrame& frame, const TensorField& P);
SSConnection build_connection(const PointFrame& frame, const VectorFieldSpec& P);

/// (∇_{e_i} π)(e_j) at (i,j), Levi-Civita.
Tensor nabla_g_pi(const SSConnection& c);
/// ∇_i P^k at (k,i), Levi-Civita.
Tensor nabla_g_P(const SSConnection& c);

struct ConcircularCheck {
  double residual = 0.0;  ///< normalised max-norm
  bool holds = false;
};

/// (∇_X π)(Y) − π(X)π(Y) − ω g(X,Y) = 0 with ω from the trace formula.
ConcircularCheck check_concircular(const SSConnection& c, double tol = kDefaultTolerance);

/// Equivalent form (∇_X π)(Y) − π(X)π(Y) + ½π(P)g − μ g = 0, μ = ω + ½π(P).
ConcircularCheck s_concircular_check(const SSConnection& c, double tol = kDefaultTolerance);
double s_concircular_mu(const SSConnection& c) noexcept;

/// Normalised max |∂_i π_j − ∂_j π_i|.
double closedness_residual(const SSConnection& c);

struct Nabla1P {
  Tensor value;  ///< ∇¹_i P^k at (k,i)
  /// Residual against (ω + π(P)) δ^k_i; empty when the concircular
  /// condition fails and the closed form does not apply.
  std::optional<double> closed_form_residual;
};

Nabla1P nabla1_P(const SSConnection& c, double tol = kDefaultTolerance);

/// True iff ω + g(P,P) vanishes to `tol`, i.e. ∇¹P = 0 under the condition.
bool is_P_connection(const SSConnection& c, double tol = kDefaultTolerance);

/// The five identities for a concircular generator: ∇¹_P = ∇_P; π∘T = 0;
/// (∇_X π)(P) = (∇_P π)(X) = π(∇_X P) = (ω+π(P))π(X); L_P π = 2(ω+π(P))π;
/// L_P g = 2∇π.
std::vector<NamedResidual> concircular_identity_suite(const SSConnection& c);

struct LieResult {
  Tensor lie;  ///< (L¹_P g)_ij
  double conformal_residual = 0.0;  ///< against 2(ω+π(P))g
  bool conformal = false;
  double killing_residual = 0.0;  ///< |ω + g(P,P)|, normalised
  bool killing = false;
};

/// Lie derivative of g along P with respect to ∇¹:
///   (∇¹_P g)(X,Y) + g(∇¹_X P, Y) + g(X, ∇¹_Y P).
LieResult lie_g_nonsym(const SSConnection& c, double tol = kDefaultTolerance);

/// Levi-Civita Lie derivatives.
Tensor lie_P_g(const SSConnection& c);   ///< (i,j)
Tensor lie_P_pi(const SSConnection& c);  ///< (i)

}  // namespace ssmc
