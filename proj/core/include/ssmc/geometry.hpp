#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ssmc/expr.hpp"
#include "ssmc/tensor.hpp"

namespace ssmc {

/// Metric of a coordinate chart as a symmetric matrix of component
/// expressions. Setting (i, j) also sets (j, i).
class MetricSpec {
 public:
  MetricSpec() = default;
  explicit MetricSpec(std::vector<std::string> coords);

  /// Diagonal metric diag(entries...).
  static MetricSpec diagonal(std::vector<std::string> coords, std::vector<Expr> entries);

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<std::string>& coords() const noexcept { return coords_; }

  const Expr& operator()(std::size_t i, std::size_t j) const { return g_[i * dim() + j]; }
  void set(std::size_t i, std::size_t j, Expr e);

 private:
  std::vector<std::string> coords_;
  std::vector<Expr> g_;
};

/// Contravariant components P^k of a vector field.
struct VectorFieldSpec {
  std::vector<Expr> components;

  std::size_t dim() const noexcept { return components.size(); }
};

struct Signature {
  int pluses = 0;
  int minuses = 0;

  bool lorentzian() const noexcept { return minuses == 1; }
  bool riemannian() const noexcept { return minuses == 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Everything derived from the metric at one chart point. Derivative indices
/// always come last: dg(i,j,k) = ∂_k g_ij, d2g(i,j,k,l) = ∂_l ∂_k g_ij,
/// gamma(k,i,j) = Γ^k_ij, dgamma(k,i,j,l) = ∂_l Γ^k_ij.
struct PointFrame {
  std::vector<double> point;
  Tensor g;
  Tensor dg;
  Tensor d2g;
  Tensor ginv;
  Tensor gamma;
  Tensor dgamma;
  Signature signature;

  std::size_t dim() const noexcept { return point.size(); }
  /// 1 + max |g_ij|: the normaliser used by every residual.
  double residual_scale() const noexcept { return 1.0 + g.max_abs(); }
};

/// Threshold on |det g| below which frame_at refuses the metric.
inline constexpr double kSingularDetTolerance = 1e-12;

/// Builds the Levi-Civita frame at `point`. Throws SingularMetricError,
/// DomainError.
PointFrame frame_at(const MetricSpec& metric, std::span<const double> point);

/// Curvature of arbitrary (possibly non-symmetric) connection coefficients:
/// R(e_i,e_j)e_k = R^l_kij e_l, stored as (l,k,i,j), with
/// R^l_kij = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik.
Tensor riemann_from_coefficients(const Tensor& gamma, const Tensor& dgamma);

/// Ric(e_j,e_k) = R^i_kij: contraction over the first vector argument.
Tensor ricci_from_riemann(const Tensor& riemann);

/// g^{jk} A_jk.
double trace_g(const Tensor& ginv, const Tensor& a);

Tensor lc_riemann(const PointFrame& f);
Tensor lc_ricci(const PointFrame& f);
double lc_scalar(const PointFrame& f);

/// A tensor at a point together with its coordinate partials; `partials`
/// carries one extra trailing Down slot for the derivative direction.
struct TensorField {
  Tensor value;
  Tensor partials;
};

/// Value and partials of a tensor whose components are given as expressions
/// (row-major over `slots`).
TensorField field_from_exprs(std::span<const Expr> components, std::vector<Slot> slots,
                             std::span<const double> point);

/// ∇T for connection coefficients coeffs(k,i,j) = Γ^k_ij (i = direction).
/// The derivative index is appended last.
Tensor covariant_derivative(const TensorField& field, const Tensor& coeffs);

/// π_i = g_ij P^j.
Tensor lower(const Tensor& vector, const Tensor& g);
/// P^i = g^ij π_j.
Tensor raise(const Tensor& covector, const Tensor& ginv);
/// g(X, Y) for contravariant X, Y.
double inner(const Tensor& g, const Tensor& x, const Tensor& y);

}  // namespace ssmc
