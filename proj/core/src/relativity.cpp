#include "ssmc/relativity.hpp"

#include <algorithm>
#include <cmath>

#include "ssmc/errors.hpp"

namespace ssmc {

FluidValues fluid_values(const FluidParams& fp, std::span<const double> point) {
  const std::size_t n = point.size();
  const Jet2 s = eval_jet2(fp.sigma, point);
  const Jet2 p = eval_jet2(fp.p, point);
  const Jet2 r = eval_jet2(fp.rho_expr(), point);
  FluidValues v{s.value(), p.value(), r.value(), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t l = 0; l < n; ++l) {
    v.d_sum[l] = s.grad(l) + p.grad(l);
    v.d_rho[l] = r.grad(l);
  }
  return v;
}

Tensor stress_energy(const FluidParams& fp, const PointFrame& f, const Tensor& pi) {
  const FluidValues v = fluid_values(fp, f.point);
  return f.g * v.rho + outer(pi, pi) * (v.sigma + v.p);
}

EfeResidual efe_residual(const CurvatureBundle& b, const FluidParams& fp, const PointFrame& f,
                         const Tensor& pi) {
  if (fp.k <= 0.0) throw Error("gravitational constant k must be positive");
  const CurvatureFamily& lc = b[Kind::G];
  EfeResidual out;
  out.residual = lc.ricci + b.g * (fp.lambda - 0.5 * lc.scalar) - stress_energy(fp, f, pi) * fp.k;
  out.max_norm = out.residual.max_abs();
  out.normalized = out.max_norm / f.residual_scale();
  return out;
}

Tensor div_pi_pi(const SSConnection& c) {
  // g^{ik} ∇_i(π_k π_j) = (div P) π_j + P^i (∇_i π)_j.
  const std::size_t n = c.dim();
  const Tensor np = nabla_g_pi(c);
  Tensor out(n, {Slot::Down});
  for (std::size_t j = 0; j < n; ++j) {
    double s = c.div_P * c.pi(j);
    for (std::size_t i = 0; i < n; ++i) s += c.P(i) * np(i, j);
    out(j) = s;
  }
  return out;
}

Tensor div_tau(const FluidParams& fp, const SSConnection& c, DivMode mode) {
  const PointFrame& f = c.frame;
  const FluidValues v = fluid_values(fp, f.point);
  const std::size_t n = c.dim();
  if (mode == DivMode::Reduced) return div_pi_pi(c) * (v.sigma + v.p);

  const double q = v.sigma + v.p;
  TensorField tau{Tensor(n, {Slot::Down, Slot::Down}),
                  Tensor(n, {Slot::Down, Slot::Down, Slot::Down})};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tau.value(i, j) = v.rho * f.g(i, j) + q * c.pi(i) * c.pi(j);
      for (std::size_t l = 0; l < n; ++l) {
        tau.partials(i, j, l) = v.d_rho[l] * f.g(i, j) + v.rho * f.dg(i, j, l) +
                                v.d_sum[l] * c.pi(i) * c.pi(j) +
                                q * (c.dpi(i, l) * c.pi(j) + c.pi(i) * c.dpi(j, l));
      }
    }
  }
  const Tensor nt = covariant_derivative(tau, f.gamma);  // (k,j,i) = ∇_i τ_kj
  Tensor out(n, {Slot::Down});
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) s += f.ginv(i, k) * nt(k, j, i);
    }
    out(j) = s;
  }
  return out;
}

PhantomReport phantom_verdict(const FluidParams& fp, std::span<const SSConnection> points,
                              bool grw_pass, double tol) {
  PhantomReport rep;
  rep.hypothesis = grw_pass;
  rep.barrier = rep.efe_compatible = rep.equivalence = !points.empty();
  for (const SSConnection& c : points) {
    const FluidValues v = fluid_values(fp, c.frame.point);
    PhantomPoint pt;
    pt.sigma = v.sigma;
    pt.p = v.p;
    pt.factor = v.sigma + v.p;
    if (v.sigma != 0.0) pt.w = v.p / v.sigma;
    pt.div_pi_pi = div_pi_pi(c).max_abs();
    pt.div_tau = div_tau(fp, c, DivMode::Reduced).max_abs();
    pt.pi_nonzero = c.pi.max_abs() > 0.0;
    // div τ is judged relative to div π⊗π so that "zero" means the factor
    // vanishes rather than the field being small.
    pt.div_tau_zero = pt.div_tau <= tol * (pt.div_pi_pi > 0.0 ? pt.div_pi_pi : 1.0);
    pt.barrier = std::abs(pt.factor) <= tol;
    pt.equivalence = !pt.pi_nonzero || pt.div_pi_pi == 0.0 || pt.div_tau_zero == pt.barrier;
    rep.barrier = rep.barrier && pt.barrier;
    rep.efe_compatible = rep.efe_compatible && pt.div_tau_zero;
    rep.equivalence = rep.equivalence && pt.equivalence;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace ssmc
