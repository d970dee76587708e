#include "ssmc/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace ssmc {

std::string_view kind_label(Kind k) noexcept {
  static constexpr std::array<std::string_view, 7> labels{"g", "0", "1", "2", "3", "4", "5"};
  return labels[static_cast<int>(k)];
}

Tensor traceless(const Tensor& a, const Tensor& g, const Tensor& ginv) {
  const double r = trace_g(ginv, a);
  return a - g * (r / static_cast<double>(a.dim()));
}

namespace {

CurvatureFamily make_family(Tensor riemann, const Tensor& g, const Tensor& ginv) {
  CurvatureFamily f;
  f.riemann = std::move(riemann);
  f.ricci = ricci_from_riemann(f.riemann);
  f.scalar = trace_g(ginv, f.ricci);
  f.einstein = f.ricci - g * (f.scalar / static_cast<double>(g.dim()));
  return f;
}

}  // namespace

CurvatureBundle curvature_family(const SSConnection& c, R0Variant variant) {
  const std::size_t n = c.dim();
  const PointFrame& fr = c.frame;

  CurvatureBundle b;
  b.point = fr.point;
  b.g = fr.g;
  b.ginv = fr.ginv;
  b.nabla1_torsion = covariant_derivative({c.torsion, c.dtorsion}, c.gamma1);
  const Tensor& T = c.torsion;
  const Tensor& NT = b.nabla1_torsion;

  // TT(l,a,b,c) = T(T(e_a,e_b),e_c)^l
  Tensor TT(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t bb = 0; bb < n; ++bb) {
        for (std::size_t cc = 0; cc < n; ++cc) {
          double s = 0.0;
          for (std::size_t m = 0; m < n; ++m) s += T(m, a, bb) * T(l, m, cc);
          TT(l, a, bb, cc) = s;
        }
      }
    }
  }

  const Tensor R1 = riemann_from_coefficients(c.gamma1, c.dgamma1);
  std::array<Tensor, 6> R;
  for (auto& r : R) r = Tensor(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  const double extra0 = variant == R0Variant::AsPrinted ? 0.25 : 0.0;

  // X = e_i, Y = e_j, Z = e_k, component l.
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double r1 = R1(l, k, i, j);
          const double nx = NT(l, j, k, i);  // (∇¹_X T)(Y,Z)
          const double ny = NT(l, i, k, j);  // (∇¹_Y T)(X,Z)
          const double txy_z = TT(l, i, j, k);
          const double cyc = txy_z + TT(l, j, k, i) + TT(l, k, i, j);
          const double tzx_y = TT(l, k, i, j);
          R[0](l, k, i, j) = r1 - 0.5 * nx + 0.5 * ny - 0.25 * cyc - extra0 * txy_z;
          R[1](l, k, i, j) = r1;
          R[2](l, k, i, j) = r1 - nx + ny - cyc;
          R[3](l, k, i, j) = r1 + ny;
          R[4](l, k, i, j) = r1 + ny - txy_z;
          R[5](l, k, i, j) = r1 - 0.5 * nx + 0.5 * ny - 0.5 * cyc + 0.5 * tzx_y;
        }
      }
    }
  }

  b[Kind::G] = make_family(lc_riemann(fr), fr.g, fr.ginv);
  for (std::size_t t = 0; t < 6; ++t) {
    b.families[t + 1] = make_family(std::move(R[t]), fr.g, fr.ginv);
  }
  return b;
}

namespace {

Tensor pi_pi(const SSConnection& c) { return outer(c.pi, c.pi); }

}  // namespace

Tensor closed_form_ricci(Kind k, const SSConnection& c) {
  const double n1 = static_cast<double>(c.dim()) - 1.0;
  const double w = c.omega;
  const double pP = c.pi_P;
  const Tensor& g = c.frame.g;
  const Tensor ric = lc_ricci(c.frame);
  switch (k) {
    case Kind::G:
      return ric;
    case Kind::K0:
      return ric - g * (0.5 * n1 * (3.0 * w + pP)) - pi_pi(c) * (0.25 * n1);
    case Kind::K1:
      return ric - g * (n1 * (2.0 * w + pP));
    case Kind::K2:
    case Kind::K3:
      return ric - g * (n1 * w);
    case Kind::K4:
      return ric - g * (n1 * w) - pi_pi(c) * n1;
    case Kind::K5:
      return ric - g * (0.5 * n1 * (3.0 * w + pP)) - pi_pi(c) * (0.5 * n1);
  }
  return ric;
}

double closed_form_scalar(Kind k, const SSConnection& c) {
  const double n = static_cast<double>(c.dim());
  const double n1 = n - 1.0;
  const double w = c.omega;
  const double pP = c.pi_P;
  const double r = lc_scalar(c.frame);
  switch (k) {
    case Kind::G:
      return r;
    case Kind::K0:
      return r - 1.5 * n * n1 * w - 0.25 * n1 * (2.0 * n + 1.0) * pP;
    case Kind::K1:
      return r - 2.0 * n * n1 * (w + 0.5 * pP);
    case Kind::K2:
    case Kind::K3:
      return r - n * n1 * w;
    case Kind::K4:
      return r - n * n1 * w - n1 * pP;
    case Kind::K5:
      return r - 1.5 * n * n1 * w - 0.5 * (n * n - 1.0) * pP;
  }
  return r;
}

Tensor einstein_relation_rhs(Kind k, const Tensor& einstein_g, const Tensor& g,
                             const Tensor& pi, double pi_P) {
  const double n = static_cast<double>(g.dim());
  const double n1 = n - 1.0;
  switch (k) {
    case Kind::K0:
      return einstein_g + g * (n1 / (4.0 * n) * pi_P) - outer(pi, pi) * (0.25 * n1);
    case Kind::K4:
      return einstein_g + g * (n1 / n * pi_P) - outer(pi, pi) * n1;
    case Kind::K5:
      return einstein_g + g * (n1 / (2.0 * n) * pi_P) - outer(pi, pi) * (0.5 * n1);
    case Kind::G:
    case Kind::K1:
    case Kind::K2:
    case Kind::K3:
      return einstein_g;
  }
  return einstein_g;
}

EinsteinRelations einstein_relations(const CurvatureBundle& b, const SSConnection& c,
                                     double tol) {
  EinsteinRelations out;
  const double scale = c.frame.residual_scale();
  const Tensor& eg = b[Kind::G].einstein;
  double beta_max = 0.0;
  for (Kind k : kTorsionKinds) {
    const Tensor rhs = einstein_relation_rhs(k, eg, b.g, c.pi, c.pi_P);
    const double r = max_abs_diff(b[k].einstein, rhs) / scale;
    out.residuals.push_back({"E" + std::string(kind_label(k)), r});
    if (k == Kind::K1 || k == Kind::K2 || k == Kind::K3) beta_max = std::max(beta_max, r);
  }
  out.invariant = beta_max <= tol;
  return out;
}

R0VariantReport r0_variant_report(const SSConnection& c) {
  const Tensor expected = closed_form_ricci(Kind::K0, c);
  const double scale = c.frame.residual_scale();
  R0VariantReport rep;
  rep.as_printed =
      max_abs_diff(curvature_family(c, R0Variant::AsPrinted)[Kind::K0].ricci, expected) / scale;
  rep.single_quarter =
      max_abs_diff(curvature_family(c, R0Variant::SingleQuarter)[Kind::K0].ricci, expected) /
      scale;
  rep.canonical =
      rep.as_printed <= rep.single_quarter ? R0Variant::AsPrinted : R0Variant::SingleQuarter;
  return rep;
}

}  // namespace ssmc
