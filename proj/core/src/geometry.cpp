#include "ssmc/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ssmc/errors.hpp"

namespace ssmc {

MetricSpec::MetricSpec(std::vector<std::string> coords)
    : coords_(std::move(coords)), g_(coords_.size() * coords_.size()) {}

MetricSpec MetricSpec::diagonal(std::vector<std::string> coords, std::vector<Expr> entries) {
  MetricSpec m(std::move(coords));
  if (entries.size() != m.dim()) throw Error("diagonal metric: wrong number of entries");
  for (std::size_t i = 0; i < m.dim(); ++i) m.set(i, i, entries[i]);
  return m;
}

void MetricSpec::set(std::size_t i, std::size_t j, Expr e) {
  g_[i * dim() + j] = e;
  g_[j * dim() + i] = std::move(e);
}

PointFrame frame_at(const MetricSpec& metric, std::span<const double> point) {
  const std::size_t n = metric.dim();
  if (point.size() != n) throw Error("frame_at: point has wrong dimension");

  PointFrame f;
  f.point.assign(point.begin(), point.end());
  f.g = Tensor(n, {Slot::Down, Slot::Down});
  f.dg = Tensor(n, {Slot::Down, Slot::Down, Slot::Down});
  f.d2g = Tensor(n, {Slot::Down, Slot::Down, Slot::Down, Slot::Down});

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Jet2 jet = eval_jet2(metric(i, j), point);
      f.g(i, j) = f.g(j, i) = jet.value();
      for (std::size_t k = 0; k < n; ++k) {
        f.dg(i, j, k) = f.dg(j, i, k) = jet.grad(k);
        for (std::size_t l = 0; l < n; ++l) {
          f.d2g(i, j, k, l) = f.d2g(j, i, k, l) = jet.hess(k, l);
        }
      }
    }
  }

  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = f.g(i, j);
  }
  const double det = g.determinant();
  if (!(std::abs(det) > kSingularDetTolerance)) {
    throw SingularMetricError("singular metric: |det g| = " + std::to_string(std::abs(det)));
  }
  const Eigen::MatrixXd ginv = g.fullPivLu().inverse();
  f.ginv = Tensor(n, {Slot::Up, Slot::Up});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) f.ginv(i, j) = 0.5 * (ginv(i, j) + ginv(j, i));
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    (eig.eigenvalues()(i) > 0.0 ? f.signature.pluses : f.signature.minuses) += 1;
  }

  // Christoffel symbols of the first kind and their partials.
  Tensor first(n, {Slot::Down, Slot::Down, Slot::Down});
  Tensor dfirst(n, {Slot::Down, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        first(l, i, j) = 0.5 * (f.dg(j, l, i) + f.dg(i, l, j) - f.dg(i, j, l));
        for (std::size_t m = 0; m < n; ++m) {
          dfirst(l, i, j, m) =
              0.5 * (f.d2g(j, l, i, m) + f.d2g(i, l, j, m) - f.d2g(i, j, l, m));
        }
      }
    }
  }

  // ∂_m g^{kl} = −g^{ka} ∂_m g_ab g^{bl}
  Tensor dginv(n, {Slot::Up, Slot::Up, Slot::Down});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t m = 0; m < n; ++m) {
        double s = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) s += f.ginv(k, a) * f.dg(a, b, m) * f.ginv(b, l);
        }
        dginv(k, l, m) = -s;
      }
    }
  }

  f.gamma = Tensor(n, {Slot::Up, Slot::Down, Slot::Down});
  f.dgamma = Tensor(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += f.ginv(k, l) * first(l, i, j);
        f.gamma(k, i, j) = f.gamma(k, j, i) = s;
        for (std::size_t m = 0; m < n; ++m) {
          double d = 0.0;
          for (std::size_t l = 0; l < n; ++l) {
            d += dginv(k, l, m) * first(l, i, j) + f.ginv(k, l) * dfirst(l, i, j, m);
          }
          f.dgamma(k, i, j, m) = f.dgamma(k, j, i, m) = d;
        }
      }
    }
  }
  return f;
}

Tensor riemann_from_coefficients(const Tensor& gamma, const Tensor& dgamma) {
  const std::size_t n = gamma.dim();
  Tensor r(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double s = dgamma(l, j, k, i) - dgamma(l, i, k, j);
          for (std::size_t m = 0; m < n; ++m) {
            s += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          }
          r(l, k, i, j) = s;
        }
      }
    }
  }
  return r;
}

Tensor ricci_from_riemann(const Tensor& riemann) {
  const std::size_t n = riemann.dim();
  Tensor ric(n, {Slot::Down, Slot::Down});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += riemann(i, k, i, j);
      ric(j, k) = s;
    }
  }
  return ric;
}

double trace_g(const Tensor& ginv, const Tensor& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) s += ginv(i, j) * a(i, j);
  }
  return s;
}

Tensor lc_riemann(const PointFrame& f) { return riemann_from_coefficients(f.gamma, f.dgamma); }
Tensor lc_ricci(const PointFrame& f) { return ricci_from_riemann(lc_riemann(f)); }
double lc_scalar(const PointFrame& f) { return trace_g(f.ginv, lc_ricci(f)); }

TensorField field_from_exprs(std::span<const Expr> components, std::vector<Slot> slots,
                             std::span<const double> point) {
  const std::size_t n = point.size();
  TensorField field;
  std::vector<Slot> dslots = slots;
  dslots.push_back(Slot::Down);
  field.value = Tensor(n, std::move(slots));
  field.partials = Tensor(n, std::move(dslots));
  if (components.size() != field.value.size()) {
    throw Error("field_from_exprs: component count does not match tensor shape");
  }
  auto value = field.value.components();
  auto partials = field.partials.components();
  for (std::size_t c = 0; c < components.size(); ++c) {
    const Jet2 jet = eval_jet2(components[c], point);
    value[c] = jet.value();
    for (std::size_t d = 0; d < n; ++d) partials[c * n + d] = jet.grad(d);
  }
  return field;
}

Tensor covariant_derivative(const TensorField& field, const Tensor& coeffs) {
  const Tensor& t = field.value;
  const std::size_t n = t.dim();
  const std::size_t rank = t.rank();
  Tensor out = field.partials;
  const auto tv = t.components();
  auto ov = out.components();

  // Walk every component of T as a multi-index.
  std::vector<std::size_t> idx(rank, 0);
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t s = rank; s-- > 1;) stride[s - 1] = stride[s] * n;

  for (std::size_t c = 0; c < tv.size(); ++c) {
    std::size_t rem = c;
    for (std::size_t s = 0; s < rank; ++s) {
      idx[s] = rem / stride[s];
      rem %= stride[s];
    }
    for (std::size_t dir = 0; dir < n; ++dir) {
      double corr = 0.0;
      for (std::size_t s = 0; s < rank; ++s) {
        const std::size_t base = c - idx[s] * stride[s];
        for (std::size_t m = 0; m < n; ++m) {
          const double tm = tv[base + m * stride[s]];
          if (t.slots()[s] == Slot::Up) {
            corr += coeffs(idx[s], dir, m) * tm;
          } else {
            corr -= coeffs(m, dir, idx[s]) * tm;
          }
        }
      }
      ov[c * n + dir] += corr;
    }
  }
  return out;
}

Tensor lower(const Tensor& vector, const Tensor& g) {
  const std::size_t n = vector.dim();
  Tensor r(n, {Slot::Down});
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += g(i, j) * vector(j);
    r(i) = s;
  }
  return r;
}

Tensor raise(const Tensor& covector, const Tensor& ginv) {
  const std::size_t n = covector.dim();
  Tensor r(n, {Slot::Up});
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ginv(i, j) * covector(j);
    r(i) = s;
  }
  return r;
}

double inner(const Tensor& g, const Tensor& x, const Tensor& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) s += g(i, j) * x(i) * y(j);
  }
  return s;
}

}  // namespace ssmc
