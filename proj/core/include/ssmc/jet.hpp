#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ssmc {

/// Truncated second-order Taylor number: value, gradient and Hessian of a
/// scalar with respect to n independent variables. The Hessian is stored as a
/// packed lower triangle, so it is symmetric by construction.
class Jet2 {
 public:
  Jet2() = default;
  /// Constant with zero derivatives.
  Jet2(std::size_t dim, double value);

  /// The coordinate function x_index evaluated at `value`.
  static Jet2 variable(std::size_t dim, std::size_t index, double value);

  std::size_t dim() const noexcept { return grad_.size(); }
  double value() const noexcept { return value_; }
  std::span<const double> grad() const noexcept { return grad_; }
  double grad(std::size_t i) const { return grad_[i]; }
  double hess(std::size_t i, std::size_t j) const { return hess_[packed(i, j)]; }

  bool is_constant() const noexcept;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& other);
  Jet2& operator-=(const Jet2& other);
  Jet2& operator*=(const Jet2& other);
  Jet2& operator/=(const Jet2& other);
  Jet2& operator*=(double s);

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }

  /// Chain rule for a scalar function h at u: given h(u), h'(u), h''(u).
  friend Jet2 compose(const Jet2& u, double h, double dh, double d2h);

 private:
  static std::size_t packed(std::size_t i, std::size_t j) noexcept {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  double value_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;
};

Jet2 sin(const Jet2& u);
Jet2 cos(const Jet2& u);
Jet2 tan(const Jet2& u);
Jet2 sinh(const Jet2& u);
Jet2 cosh(const Jet2& u);
Jet2 tanh(const Jet2& u);
Jet2 exp(const Jet2& u);
Jet2 log(const Jet2& u);
Jet2 sqrt(const Jet2& u);
Jet2 abs(const Jet2& u);
/// u^k for integer k.
Jet2 pow(const Jet2& u, int k);
/// u^v = exp(v log u).
Jet2 pow(const Jet2& u, const Jet2& v);

}  // namespace ssmc
