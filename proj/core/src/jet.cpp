#include "ssmc/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ssmc {

Jet2::Jet2(std::size_t dim, double value)
    : value_(value), grad_(dim, 0.0), hess_(dim * (dim + 1) / 2, 0.0) {}

Jet2 Jet2::variable(std::size_t dim, std::size_t index, double value) {
  assert(index < dim);
  Jet2 j(dim, value);
  j.grad_[index] = 1.0;
  return j;
}

bool Jet2::is_constant() const noexcept {
  return std::all_of(grad_.begin(), grad_.end(), [](double g) { return g == 0.0; }) &&
         std::all_of(hess_.begin(), hess_.end(), [](double h) { return h == 0.0; });
}

Jet2 Jet2::operator-() const {
  Jet2 r = *this;
  r *= -1.0;
  return r;
}

Jet2& Jet2::operator+=(const Jet2& other) {
  assert(dim() == other.dim());
  value_ += other.value_;
  for (std::size_t i = 0; i < grad_.size(); ++i) grad_[i] += other.grad_[i];
  for (std::size_t i = 0; i < hess_.size(); ++i) hess_[i] += other.hess_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& other) {
  assert(dim() == other.dim());
  value_ -= other.value_;
  for (std::size_t i = 0; i < grad_.size(); ++i) grad_[i] -= other.grad_[i];
  for (std::size_t i = 0; i < hess_.size(); ++i) hess_[i] -= other.hess_[i];
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& other) {
  assert(dim() == other.dim());
  const std::size_t n = dim();
  // H(uv) = u H(v) + v H(u) + du dv^T + dv du^T
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double& h = hess_[packed(i, j)];
      h = value_ * other.hess_[packed(i, j)] + other.value_ * h +
          grad_[i] * other.grad_[j] + other.grad_[i] * grad_[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    grad_[i] = value_ * other.grad_[i] + other.value_ * grad_[i];
  }
  value_ *= other.value_;
  return *this;
}

Jet2& Jet2::operator/=(const Jet2& other) {
  const double v = other.value_;
  return *this *= compose(other, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet2& Jet2::operator*=(double s) {
  value_ *= s;
  for (double& g : grad_) g *= s;
  for (double& h : hess_) h *= s;
  return *this;
}

Jet2 compose(const Jet2& u, double h, double dh, double d2h) {
  const std::size_t n = u.dim();
  Jet2 r(n, h);
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = dh * u.grad_[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t p = Jet2::packed(i, j);
      r.hess_[p] = dh * u.hess_[p] + d2h * u.grad_[i] * u.grad_[j];
    }
  }
  return r;
}

Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return compose(u, s, c, -s);
}

Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return compose(u, c, -s, -c);
}

Jet2 tan(const Jet2& u) {
  const double t = std::tan(u.value());
  const double sec2 = 1.0 + t * t;
  return compose(u, t, sec2, 2.0 * t * sec2);
}

Jet2 sinh(const Jet2& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  return compose(u, s, c, s);
}

Jet2 cosh(const Jet2& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  return compose(u, c, s, c);
}

Jet2 tanh(const Jet2& u) {
  const double t = std::tanh(u.value());
  const double sech2 = 1.0 - t * t;
  return compose(u, t, sech2, -2.0 * t * sech2);
}

Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.value());
  return compose(u, e, e, e);
}

Jet2 log(const Jet2& u) {
  const double x = u.value();
  return compose(u, std::log(x), 1.0 / x, -1.0 / (x * x));
}

Jet2 sqrt(const Jet2& u) {
  const double s = std::sqrt(u.value());
  if (s == 0.0) return compose(u, 0.0, 0.0, 0.0);
  return compose(u, s, 0.5 / s, -0.25 / (s * u.value()));
}

Jet2 abs(const Jet2& u) {
  // The kink at 0 gets the zero subgradient.
  const double x = u.value();
  const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  return compose(u, std::abs(x), sign, 0.0);
}

Jet2 pow(const Jet2& u, int k) {
  if (k == 0) return Jet2(u.dim(), 1.0);
  if (k == 1) return u;
  const double x = u.value();
  const double xk2 = k >= 2 ? std::pow(x, k - 2) : 0.0;
  if (k >= 2) {
    return compose(u, xk2 * x * x, k * xk2 * x, static_cast<double>(k) * (k - 1) * xk2);
  }
  // k < 0; the caller guarantees x != 0
  return compose(u, std::pow(x, k), k * std::pow(x, k - 1),
                 static_cast<double>(k) * (k - 1) * std::pow(x, k - 2));
}

Jet2 pow(const Jet2& u, const Jet2& v) { return exp(v * log(u)); }

}  // namespace ssmc
