#include "ssmc/validation/fd_oracle.hpp"

#include <Eigen/Dense>
#include <vector>

namespace ssmc::validation {

namespace {

using Real = long double;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

Mat metric_at(const MetricSpec& m, const std::vector<Real>& x) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Mat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = evaluate<Real>(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), x);
    }
  }
  return g;
}

// Γ^k_ij flattened as (k*n + i)*n + j.
std::vector<Real> christoffel(const MetricSpec& m, std::vector<Real> x, Real h) {
  const std::size_t n = m.dim();
  std::vector<Mat> dg(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real xk = x[k];
    x[k] = xk + h;
    const Mat plus = metric_at(m, x);
    x[k] = xk - h;
    const Mat minus = metric_at(m, x);
    x[k] = xk;
    dg[k] = (plus - minus) / (2 * h);
  }
  const Mat ginv = metric_at(m, x).inverse();
  std::vector<Real> out(n * n * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Real s = 0;
        for (std::size_t l = 0; l < n; ++l) {
          const auto L = static_cast<Eigen::Index>(l);
          const auto I = static_cast<Eigen::Index>(i);
          const auto J = static_cast<Eigen::Index>(j);
          s += ginv(static_cast<Eigen::Index>(k), L) * (dg[i](L, J) + dg[j](L, I) - dg[l](I, J));
        }
        out[(k * n + i) * n + j] = s / 2;
      }
    }
  }
  return out;
}

std::vector<Real> widen(std::span<const double> p) { return {p.begin(), p.end()}; }

}  // namespace

Tensor fd_christoffel(const MetricSpec& metric, std::span<const double> point, double h) {
  const std::size_t n = metric.dim();
  const auto g = christoffel(metric, widen(point), h);
  Tensor t(n, {Slot::Up, Slot::Down, Slot::Down});
  auto c = t.components();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(g[i]);
  return t;
}

Tensor fd_riemann(const MetricSpec& metric, std::span<const double> point, double h) {
  const std::size_t n = metric.dim();
  const Real hl = h;
  std::vector<Real> x = widen(point);
  Tensor dgamma(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t l = 0; l < n; ++l) {
    const Real xl = x[l];
    x[l] = xl + hl;
    const auto plus = christoffel(metric, x, hl);
    x[l] = xl - hl;
    const auto minus = christoffel(metric, x, hl);
    x[l] = xl;
    for (std::size_t c = 0; c < plus.size(); ++c) {
      dgamma.components()[c * n + l] = static_cast<double>((plus[c] - minus[c]) / (2 * hl));
    }
  }
  return riemann_from_coefficients(fd_christoffel(metric, point, h), dgamma);
}

}  // namespace ssmc::validation
