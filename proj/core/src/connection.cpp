#include "ssmc/connection.hpp"

#include <algorithm>
#include <cmath>

#include "ssmc/errors.hpp"

namespace ssmc {

namespace {

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

}  // namespace

SSConnection build_connection(const PointFrame& frame, const TensorField& P) {
  const std::size_t n = frame.dim();
  if (P.value.dim() != n || P.value.rank() != 1) {
    throw Error("build_connection: vector field has wrong shape");
  }
  SSConnection c;
  c.frame = frame;
  c.P = P.value;
  c.dP = P.partials;
  c.pi = lower(c.P, frame.g);

  c.dpi = Tensor(n, {Slot::Down, Slot::Down});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      double s = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        s += frame.dg(i, m, l) * c.P(m) + frame.g(i, m) * c.dP(m, l);
      }
      c.dpi(i, l) = s;
    }
  }

  c.gamma1 = Tensor(n, {Slot::Up, Slot::Down, Slot::Down});
  c.dgamma1 = Tensor(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  c.torsion = Tensor(n, {Slot::Up, Slot::Down, Slot::Down});
  c.dtorsion = Tensor(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        c.gamma1(k, i, j) =
            frame.gamma(k, i, j) + c.pi(j) * delta(k, i) - frame.g(i, j) * c.P(k);
        c.torsion(k, i, j) = c.pi(j) * delta(k, i) - c.pi(i) * delta(k, j);
        for (std::size_t l = 0; l < n; ++l) {
          c.dgamma1(k, i, j, l) = frame.dgamma(k, i, j, l) + c.dpi(j, l) * delta(k, i) -
                                  frame.dg(i, j, l) * c.P(k) - frame.g(i, j) * c.dP(k, l);
          c.dtorsion(k, i, j, l) = c.dpi(j, l) * delta(k, i) - c.dpi(i, l) * delta(k, j);
        }
      }
    }
  }

  double div = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    div += c.dP(i, i);
    for (std::size_t k = 0; k < n; ++k) div += frame.gamma(i, i, k) * c.P(k);
  }
  c.div_P = div;
  c.pi_P = inner(frame.g, c.P, c.P);
  c.omega = (c.div_P - c.pi_P) / static_cast<double>(n);
  return c;
}

SSConnection build_connection(const PointFrame& frame, const VectorFieldSpec& P) {
  if (P.dim() != frame.dim()) throw Error("build_connection: P has wrong number of components");
  return build_connection(frame, field_from_exprs(P.components, {Slot::Up}, frame.point));
}

Tensor nabla_g_pi(const SSConnection& c) {
  const Tensor d = covariant_derivative({c.pi, c.dpi}, c.frame.gamma);  // (j, i) = ∇_i π_j
  const std::size_t n = c.dim();
  Tensor r(n, {Slot::Down, Slot::Down});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = d(j, i);
  }
  return r;
}

Tensor nabla_g_P(const SSConnection& c) { return covariant_derivative({c.P, c.dP}, c.frame.gamma); }

ConcircularCheck check_concircular(const SSConnection& c, double tol) {
  const Tensor np = nabla_g_pi(c);
  const std::size_t n = c.dim();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m = std::max(m, std::abs(np(i, j) - c.pi(i) * c.pi(j) - c.omega * c.frame.g(i, j)));
    }
  }
  const double r = m / c.frame.residual_scale();
  return {r, r <= tol};
}

double s_concircular_mu(const SSConnection& c) noexcept { return c.omega + 0.5 * c.pi_P; }

ConcircularCheck s_concircular_check(const SSConnection& c, double tol) {
  const Tensor np = nabla_g_pi(c);
  const std::size_t n = c.dim();
  const double mu = s_concircular_mu(c);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double gij = c.frame.g(i, j);
      m = std::max(m, std::abs(np(i, j) - c.pi(i) * c.pi(j) + 0.5 * c.pi_P * gij - mu * gij));
    }
  }
  const double r = m / c.frame.residual_scale();
  return {r, r <= tol};
}

double closedness_residual(const SSConnection& c) {
  double m = 0.0;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    for (std::size_t j = 0; j < i; ++j) m = std::max(m, std::abs(c.dpi(j, i) - c.dpi(i, j)));
  }
  return m / c.frame.residual_scale();
}

Nabla1P nabla1_P(const SSConnection& c, double tol) {
  Nabla1P out;
  out.value = covariant_derivative({c.P, c.dP}, c.gamma1);
  if (check_concircular(c, tol).holds) {
    const double factor = c.omega + c.pi_P;
    double m = 0.0;
    for (std::size_t k = 0; k < c.dim(); ++k) {
      for (std::size_t i = 0; i < c.dim(); ++i) {
        m = std::max(m, std::abs(out.value(k, i) - factor * delta(k, i)));
      }
    }
    out.closed_form_residual = m / c.frame.residual_scale();
  }
  return out;
}

bool is_P_connection(const SSConnection& c, double tol) {
  return std::abs(c.omega + c.pi_P) / c.frame.residual_scale() <= tol;
}

Tensor lie_P_g(const SSConnection& c) {
  const std::size_t n = c.dim();
  const PointFrame& f = c.frame;
  Tensor r(n, {Slot::Down, Slot::Down});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += c.P(k) * f.dg(i, j, k) + f.g(k, j) * c.dP(k, i) + f.g(i, k) * c.dP(k, j);
      }
      r(i, j) = s;
    }
  }
  return r;
}

Tensor lie_P_pi(const SSConnection& c) {
  const std::size_t n = c.dim();
  Tensor r(n, {Slot::Down});
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += c.P(j) * c.dpi(i, j) + c.pi(j) * c.dP(j, i);
    r(i) = s;
  }
  return r;
}

std::vector<NamedResidual> concircular_identity_suite(const SSConnection& c) {
  const std::size_t n = c.dim();
  const PointFrame& f = c.frame;
  const double scale = f.residual_scale();
  const double factor = c.omega + c.pi_P;
  const Tensor np = nabla_g_pi(c);
  const Tensor nP = nabla_g_P(c);
  const Tensor lpi = lie_P_pi(c);
  const Tensor lg = lie_P_g(c);

  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0, r5 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += c.P(i) * (c.gamma1(k, i, j) - f.gamma(k, i, j));
      r1 = std::max(r1, std::abs(d));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += c.pi(k) * c.torsion(k, i, j);
      r2 = std::max(r2, std::abs(s));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    double a = 0.0, b = 0.0, p = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      a += np(x, j) * c.P(j);  // (∇_X π)(P)
      b += c.P(j) * np(j, x);  // (∇_P π)(X)
    }
    for (std::size_t k = 0; k < n; ++k) p += c.pi(k) * nP(k, x);  // π(∇_X P)
    const double rhs = factor * c.pi(x);
    r3 = std::max({r3, std::abs(a - rhs), std::abs(b - rhs), std::abs(p - rhs)});
    r4 = std::max(r4, std::abs(lpi(x) - 2.0 * rhs));
    for (std::size_t y = 0; y < n; ++y) r5 = std::max(r5, std::abs(lg(x, y) - 2.0 * np(x, y)));
  }
  return {
      {"nabla1_P_equals_nabla_P", r1 / scale},
      {"pi_of_torsion_vanishes", r2 / scale},
      {"nabla_pi_on_P", r3 / scale},
      {"lie_P_pi", r4 / scale},
      {"lie_P_g", r5 / scale},
  };
}

LieResult lie_g_nonsym(const SSConnection& c, double tol) {
  const std::size_t n = c.dim();
  const PointFrame& f = c.frame;
  const Tensor ng = covariant_derivative({f.g, f.dg}, c.gamma1);  // (i,j,m) = (∇¹_m g)_ij
  const Tensor n1P = covariant_derivative({c.P, c.dP}, c.gamma1);  // (k,i) = ∇¹_i P^k

  LieResult out;
  out.lie = Tensor(n, {Slot::Down, Slot::Down});
  const double factor = c.omega + c.pi_P;
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += ng(i, j, k) * c.P(k) + f.g(k, j) * n1P(k, i) + f.g(i, k) * n1P(k, j);
      }
      out.lie(i, j) = s;
      m = std::max(m, std::abs(s - 2.0 * factor * f.g(i, j)));
    }
  }
  const double scale = f.residual_scale();
  out.conformal_residual = m / scale;
  out.conformal = out.conformal_residual <= tol;
  out.killing_residual = std::abs(factor) / scale;
  out.killing = out.conformal && out.killing_residual <= tol;
  return out;
}

}  // namespace ssmc
