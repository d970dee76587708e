#include "ssmc/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ssmc/errors.hpp"

namespace ssmc {

std::string_view status_label(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

Verdict conjoin(std::span<const Verdict> verdicts) {
  Verdict out{Status::Pass, 0.0};
  bool indeterminate = false;
  for (const Verdict& v : verdicts) {
    out.residual = std::max(out.residual, v.residual);
    if (v.status == Status::Fail) out.status = Status::Fail;
    if (v.status == Status::Indeterminate) indeterminate = true;
  }
  if (out.status != Status::Fail && indeterminate) out.status = Status::Indeterminate;
  return out;
}

void Spread::add(double v, bool first) {
  if (first) {
    min = max = v;
  } else {
    min = std::min(min, v);
    max = std::max(max, v);
  }
}

namespace {

Verdict judge(double residual, double tol) {
  return {residual <= tol ? Status::Pass : Status::Fail, residual};
}

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Eigen::MatrixXd to_matrix(const Tensor& t) {
  const auto n = static_cast<Eigen::Index>(t.dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = t(i, j);
  }
  return m;
}

Tensor inverse_metric(const Tensor& g) {
  const Eigen::MatrixXd inv = to_matrix(g).fullPivLu().inverse();
  Tensor r(g.dim(), {Slot::Up, Slot::Up});
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      r(i, j) = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return r;
}

struct PJets {
  Tensor value;   // P^k
  Tensor grad;    // (k,l) = ∂_l P^k
  Tensor hess;    // (k,i,l) = ∂_l ∂_i P^k
};

PJets p_jets(const VectorFieldSpec& P, std::span<const double> point) {
  const std::size_t n = point.size();
  if (P.dim() != n) throw Error("vector field has wrong number of components");
  PJets j{Tensor(n, {Slot::Up}), Tensor(n, {Slot::Up, Slot::Down}),
          Tensor(n, {Slot::Up, Slot::Down, Slot::Down})};
  for (std::size_t k = 0; k < n; ++k) {
    const Jet2 jet = eval_jet2(P.components[k], point);
    j.value(k) = jet.value();
    for (std::size_t i = 0; i < n; ++i) {
      j.grad(k, i) = jet.grad(i);
      for (std::size_t l = 0; l < n; ++l) j.hess(k, i, l) = jet.hess(i, l);
    }
  }
  return j;
}

TorseFit fit_from(const PointFrame& f, const PJets& P) {
  const std::size_t n = f.dim();
  const auto N = static_cast<Eigen::Index>(n);

  // b(k,i) = ∇_i P^k and db(k,i,l) = ∂_l ∇_i P^k.
  Tensor b(n, {Slot::Up, Slot::Down});
  Tensor db(n, {Slot::Up, Slot::Down, Slot::Down});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = P.grad(k, i);
      for (std::size_t m = 0; m < n; ++m) s += f.gamma(k, i, m) * P.value(m);
      b(k, i) = s;
      for (std::size_t l = 0; l < n; ++l) {
        double d = P.hess(k, i, l);
        for (std::size_t m = 0; m < n; ++m) {
          d += f.dgamma(k, i, m, l) * P.value(m) + f.gamma(k, i, m) * P.grad(m, l);
        }
        db(k, i, l) = d;
      }
    }
  }

  double p2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) p2 += P.value(k) * P.value(k);

  TorseFit fit;
  fit.eta = Tensor(n, {Slot::Down});
  fit.deta = Tensor(n, {Slot::Down, Slot::Down});
  fit.identifiable = p2 > 0.0;

  if (!fit.identifiable) {
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += b(i, i);
    fit.omega = tr / static_cast<double>(n);
  } else {
    // Unknowns x = (ω, η_0..η_{n-1}); normal equations M x = c.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(N + 1);
    M(0, 0) = static_cast<double>(n);
    for (Eigen::Index m = 0; m < N; ++m) {
      M(0, m + 1) = M(m + 1, 0) = P.value(m);
      M(m + 1, m + 1) = p2;
    }
    for (std::size_t i = 0; i < n; ++i) c(0) += b(i, i);
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < n; ++k) c(static_cast<Eigen::Index>(m) + 1) += P.value(k) * b(k, m);
    }
    const auto lu = M.partialPivLu();
    const Eigen::VectorXd x = lu.solve(c);
    fit.omega = x(0);
    for (Eigen::Index m = 0; m < N; ++m) fit.eta(m) = x(m + 1);

    for (std::size_t l = 0; l < n; ++l) {
      Eigen::MatrixXd dM = Eigen::MatrixXd::Zero(N + 1, N + 1);
      Eigen::VectorXd dc = Eigen::VectorXd::Zero(N + 1);
      double dp2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) dp2 += 2.0 * P.value(k) * P.grad(k, l);
      for (Eigen::Index m = 0; m < N; ++m) {
        dM(0, m + 1) = dM(m + 1, 0) = P.grad(m, l);
        dM(m + 1, m + 1) = dp2;
      }
      for (std::size_t i = 0; i < n; ++i) dc(0) += db(i, i, l);
      for (std::size_t m = 0; m < n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          s += P.grad(k, l) * b(k, m) + P.value(k) * db(k, m, l);
        }
        dc(static_cast<Eigen::Index>(m) + 1) = s;
      }
      const Eigen::VectorXd dx = lu.solve(dc - dM * x);
      for (Eigen::Index m = 0; m < N; ++m) fit.deta(m, l) = dx(m + 1);
    }
  }

  double r = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      r = std::max(r, std::abs(b(k, i) - fit.omega * delta(k, i) - fit.eta(i) * P.value(k)));
    }
  }
  fit.residual = r / f.residual_scale();
  return fit;
}

}  // namespace

TorseFit fit_torse_forming(const MetricSpec& metric, const VectorFieldSpec& P,
                           std::span<const double> point) {
  return fit_from(frame_at(metric, point), p_jets(P, point));
}

std::vector<std::pair<std::string, Verdict>> VectorFlags::named() const {
  return {
      {"torse_forming", torse_forming},
      {"torqued", torqued},
      {"concircular_fialkow", concircular_fialkow},
      {"concircular_yano", concircular_yano},
      {"recurrent", recurrent},
      {"concurrent", concurrent},
      {"parallel", parallel},
      {"self_torse_forming", self_torse_forming},
      {"anti_torqued", anti_torqued},
      {"geodesic", geodesic},
      {"unit_timelike", unit_timelike},
      {"unit_form", unit_form},
      {"conformal_killing", conformal_killing},
      {"killing", killing},
  };
}

namespace {

constexpr std::array<Verdict VectorFlags::*, 14> kFlagMembers{
    &VectorFlags::torse_forming,      &VectorFlags::torqued,
    &VectorFlags::concircular_fialkow, &VectorFlags::concircular_yano,
    &VectorFlags::recurrent,          &VectorFlags::concurrent,
    &VectorFlags::parallel,           &VectorFlags::self_torse_forming,
    &VectorFlags::anti_torqued,       &VectorFlags::geodesic,
    &VectorFlags::unit_timelike,      &VectorFlags::unit_form,
    &VectorFlags::conformal_killing,  &VectorFlags::killing,
};

}  // namespace

VectorPointReport classify_vector_at(const MetricSpec& metric, const VectorFieldSpec& P,
                                     std::span<const double> point, double tol) {
  const PointFrame f = frame_at(metric, point);
  const PJets jets = p_jets(P, point);
  const SSConnection c = build_connection(f, TensorField{jets.value, jets.grad});
  const std::size_t n = f.dim();
  const double s = f.residual_scale();

  VectorPointReport rep;
  rep.fit = fit_from(f, jets);
  const TorseFit& fit = rep.fit;
  VectorFlags& fl = rep.flags;

  fl.torse_forming = judge(fit.residual, tol);
  const bool torse = fl.torse_forming.pass();

  // Special cases of a torse-forming field: fail outright when the field is
  // not torse-forming; indeterminate when η cannot be identified.
  auto special = [&](double residual, bool needs_eta) -> Verdict {
    if (!torse) return {Status::Fail, residual};
    if (needs_eta && !fit.identifiable) return {Status::Indeterminate, residual};
    return judge(residual, tol);
  };

  double eta_max = max_abs(fit.eta.components()) / s;
  double eta_P = 0.0, self = 0.0, anti = 0.0, curl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    eta_P += fit.eta(i) * c.P(i);
    self = std::max(self, std::abs(fit.eta(i) - c.pi(i)));
    anti = std::max(anti, std::abs(fit.eta(i) + fit.omega * c.pi(i)));
    for (std::size_t l = 0; l < i; ++l) {
      curl = std::max(curl, std::abs(fit.deta(i, l) - fit.deta(l, i)));
    }
  }
  const double w = std::abs(fit.omega) / s;
  const double w1 = std::abs(fit.omega - 1.0) / s;

  fl.torqued = special(std::abs(eta_P) / s, true);
  fl.concircular_fialkow = special(eta_max, true);
  fl.concircular_yano = special(curl / s, true);
  fl.recurrent = special(w, false);
  fl.concurrent = special(std::max(eta_max, w1), true);
  fl.parallel = special(std::max(eta_max, w), true);
  fl.self_torse_forming = special(self / s, true);
  fl.anti_torqued = special(anti / s, true);

  const Tensor nP = nabla_g_P(c);
  double geo = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += c.P(i) * nP(k, i);
    geo = std::max(geo, std::abs(v));
  }
  fl.geodesic = judge(geo / s, tol);
  fl.unit_timelike = judge(std::abs(c.pi_P + 1.0) / s, tol);

  const double unit_dev = std::abs(std::abs(c.pi_P) - 1.0) / s;
  if (unit_dev <= tol && torse) {
    const double eps = c.pi_P > 0.0 ? 1.0 : -1.0;
    const Tensor np = nabla_g_pi(c);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m = std::max(m, std::abs(np(i, j) - fit.omega * (f.g(i, j) - eps * c.pi(i) * c.pi(j))));
      }
    }
    fl.unit_form = judge(m / s, tol);
  } else {
    fl.unit_form = {Status::Indeterminate, unit_dev};
  }

  const Tensor lg = lie_P_g(c);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      num += lg(i, j) * f.g(i, j);
      den += f.g(i, j) * f.g(i, j);
    }
  }
  rep.conformal_factor = num / (2.0 * den);
  double conf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      conf = std::max(conf, std::abs(lg(i, j) - 2.0 * rep.conformal_factor * f.g(i, j)));
    }
  }
  fl.conformal_killing = judge(conf / s, tol);
  const double kill = std::max(conf, std::abs(rep.conformal_factor)) / s;
  fl.killing = fl.conformal_killing.pass() ? judge(kill, tol) : Verdict{Status::Fail, kill};
  return rep;
}

VectorTaxonomy classify_vector(const MetricSpec& metric, const VectorFieldSpec& P,
                               std::span<const std::vector<double>> points, double tol) {
  if (points.empty()) throw Error("classify_vector: no sample points");
  VectorTaxonomy tax;
  for (const auto& p : points) tax.points.push_back(classify_vector_at(metric, P, p, tol));
  for (auto member : kFlagMembers) {
    std::vector<Verdict> vs;
    for (const auto& pr : tax.points) vs.push_back(pr.flags.*member);
    tax.aggregate.*member = conjoin(vs);
  }
  for (std::size_t i = 0; i < tax.points.size(); ++i) {
    tax.omega.add(tax.points[i].fit.omega, i == 0);
    tax.conformal_factor.add(tax.points[i].conformal_factor, i == 0);
  }
  return tax;
}

std::vector<std::string> taxonomy_violations(const VectorFlags& f) {
  std::vector<std::string> out;
  auto implies = [&](const Verdict& a, const Verdict& b, const char* what) {
    if (a.pass() && !b.pass()) out.emplace_back(what);
  };
  implies(f.parallel, f.recurrent, "parallel => recurrent");
  implies(f.parallel, f.concircular_fialkow, "parallel => concircular_fialkow");
  implies(f.concurrent, f.concircular_fialkow, "concurrent => concircular_fialkow");
  implies(f.concircular_fialkow, f.torse_forming, "concircular_fialkow => torse_forming");
  implies(f.concircular_fialkow, f.torqued, "concircular_fialkow => torqued");
  implies(f.recurrent, f.torse_forming, "recurrent => torse_forming");
  if (f.self_torse_forming.pass() && f.unit_form.pass() && !f.concircular_yano.pass()) {
    out.emplace_back("self_torse_forming & unit => concircular_yano");
  }
  implies(f.killing, f.conformal_killing, "killing => conformal_killing");
  return out;
}

// --------------------------------------------------------------------------

RicciData ricci_data(const CurvatureBundle& b, const SSConnection& c, Kind k) {
  return {b.g, b[k].ricci, c.pi};
}

double pi_norm2(const RicciData& d) {
  const Tensor ginv = inverse_metric(d.g);
  return inner(ginv, d.pi, d.pi);
}

QuasiEinsteinFit fit_quasi_einstein(const Tensor& g, const Tensor& a, const Tensor& pi,
                                    double tol) {
  const std::size_t n = g.dim();
  const Tensor pp = outer(pi, pi);
  double gg = 0.0, gp = 0.0, ppp = 0.0, ag = 0.0, ap = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gg += g(i, j) * g(i, j);
      gp += g(i, j) * pp(i, j);
      ppp += pp(i, j) * pp(i, j);
      ag += a(i, j) * g(i, j);
      ap += a(i, j) * pp(i, j);
    }
  }
  QuasiEinsteinFit fit;
  const double det = gg * ppp - gp * gp;
  if (ppp == 0.0 || det <= 1e-14 * gg * ppp) {
    fit.b_identifiable = false;
    fit.a = ag / gg;
    fit.b = 0.0;
  } else {
    fit.a = (ag * ppp - ap * gp) / det;
    fit.b = (gg * ap - gp * ag) / det;
  }
  const double scale = 1.0 + g.max_abs();
  fit.residual = max_abs_diff(a, g * fit.a + pp * fit.b) / scale;
  fit.einstein_residual = traceless(a, g, inverse_metric(g)).max_abs() / scale;
  fit.einstein = fit.einstein_residual <= tol;
  return fit;
}

QuasiEinsteinReport classify_quasi_einstein(std::span<const RicciData> data, double tol) {
  if (data.empty()) throw Error("classify_quasi_einstein: no data");
  QuasiEinsteinReport rep;
  std::vector<Verdict> qe, ein;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const RicciData& d = data[i];
    rep.points.push_back(fit_quasi_einstein(d.g, d.ric, d.pi, tol));
    const QuasiEinsteinFit& f = rep.points.back();
    qe.push_back(judge(f.residual, tol));
    ein.push_back(judge(f.einstein_residual, tol));
    rep.a.add(f.a, i == 0);
    rep.b.add(f.b, i == 0);
  }
  rep.quasi_einstein = conjoin(qe);
  rep.einstein = conjoin(ein);
  return rep;
}

Verdict einstein_type(Kind k, const CurvatureBundle& b, double tol) {
  return judge(b[k].einstein.max_abs() / (1.0 + b.g.max_abs()), tol);
}

Verdict einstein_type(Kind k, const RicciData& d, double tol) {
  const Tensor ginv = inverse_metric(d.g);
  const Tensor eg = traceless(d.ric, d.g, ginv);
  const Tensor e = einstein_relation_rhs(k, eg, d.g, d.pi, inner(ginv, d.pi, d.pi));
  return judge(e.max_abs() / (1.0 + d.g.max_abs()), tol);
}

Tensor quasi_einstein_form(Kind k, const RicciData& d, double r) {
  const double n = static_cast<double>(d.dim());
  const double n1 = n - 1.0;
  const double pP = pi_norm2(d);
  const Tensor pp = outer(d.pi, d.pi);
  switch (k) {
    case Kind::K0:
      return d.g * ((4.0 * r - n1 * pP) / (4.0 * n)) + pp * (0.25 * n1);
    case Kind::K4:
      return d.g * ((r - n1 * pP) / n) + pp * n1;
    case Kind::K5:
      return d.g * ((2.0 * r - n1 * pP) / (2.0 * n)) + pp * (0.5 * n1);
    default:
      throw Error("quasi_einstein_form: only kinds 0, 4 and 5 have a quasi-Einstein form");
  }
}

EquivalenceReport qe_equivalences(Kind k, const RicciData& d, double r, double tol) {
  EquivalenceReport rep;
  const Tensor form = quasi_einstein_form(k, d, r);
  rep.einstein_type = einstein_type(k, d, tol);
  rep.form = judge(max_abs_diff(d.ric, form) / (1.0 + d.g.max_abs()), tol);
  rep.consistent = rep.einstein_type.pass() == rep.form.pass();
  return rep;
}

GrwEinsteinTypeForm grw_einstein_type_form(Kind k, std::size_t n) {
  const double nd = static_cast<double>(n);
  const double n1 = nd - 1.0;
  switch (k) {
    case Kind::K0: return {1.25 * n1, 0.25 * n1, n1 * (5.0 * nd - 1.0) / 4.0};
    case Kind::K4: return {2.0 * n1, n1, n1 * (2.0 * nd - 1.0)};
    case Kind::K5: return {1.5 * n1, 0.5 * n1, n1 * (3.0 * nd - 1.0) / 2.0};
    default:
      throw Error("grw_einstein_type_form: only kinds 0, 4 and 5");
  }
}

// --------------------------------------------------------------------------

GrwPointReport grw_point(const SSConnection& c, double tol) {
  const std::size_t n = c.dim();
  const double s = c.frame.residual_scale();
  GrwPointReport rep;
  rep.lorentzian = c.frame.signature.lorentzian();
  rep.unit_residual = std::abs(c.pi_P + 1.0) / s;
  const Tensor nP = nabla_g_P(c);
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      m = std::max(m, std::abs(nP(k, i) - delta(k, i) - c.pi(i) * c.P(k)));
    }
  }
  rep.torse_residual = m / s;
  rep.omega_residual = std::abs(c.omega - 1.0) / s;
  rep.nabla1_P = nabla1_P(c, tol).value.max_abs() / s;
  const bool pass = n >= 3 && rep.lorentzian && rep.unit_residual <= tol &&
                    rep.torse_residual <= tol;
  rep.verdict = {pass ? Status::Pass : Status::Fail,
                 std::max(rep.unit_residual, rep.torse_residual)};
  return rep;
}

GrwReport grw_detect(const MetricSpec& metric, const VectorFieldSpec& P,
                     std::span<const std::vector<double>> points, double tol) {
  GrwReport rep;
  std::vector<Verdict> vs;
  for (const auto& p : points) {
    const SSConnection c = build_connection(frame_at(metric, p), P);
    rep.points.push_back(grw_point(c, tol));
    vs.push_back(rep.points.back().verdict);
  }
  rep.verdict = conjoin(vs);
  return rep;
}

std::optional<std::vector<NamedResidual>> grw_identity_suite(const CurvatureBundle& b,
                                                             const SSConnection& c,
                                                             double tol) {
  if (!grw_point(c, tol).verdict.pass()) return std::nullopt;
  const std::size_t n = c.dim();
  const double n1 = static_cast<double>(n) - 1.0;
  const double s = c.frame.residual_scale();
  const Tensor& g = b.g;
  const Tensor pp = outer(c.pi, c.pi);

  auto ricP = [&](Kind k) {
    Tensor v(n, {Slot::Down});
    for (std::size_t x = 0; x < n; ++x) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += c.P(j) * b[k].ricci(j, x);
      v(x) = sum;
    }
    return v;
  };
  const Tensor target = c.pi * n1;
  const Tensor& ricg = b[Kind::G].ricci;

  std::vector<NamedResidual> out;
  out.push_back({"ric_g(P,.)=(n-1)pi", max_abs_diff(ricP(Kind::G), target) / s});
  out.push_back({"ric_1(P,.)=0", ricP(Kind::K1).max_abs() / s});
  out.push_back({"4ric_0(P,.)=(n-1)pi", max_abs_diff(ricP(Kind::K0) * 4.0, target) / s});
  out.push_back({"ric_4(P,.)=(n-1)pi", max_abs_diff(ricP(Kind::K4), target) / s});
  out.push_back({"2ric_5(P,.)=(n-1)pi", max_abs_diff(ricP(Kind::K5) * 2.0, target) / s});
  out.push_back({"nabla1_torsion=0", b.nabla1_torsion.max_abs() / s});
  out.push_back({"grw_ric_0", max_abs_diff(b[Kind::K0].ricci,
                                           ricg - (g * 4.0 + pp) * (0.25 * n1)) / s});
  for (Kind k : {Kind::K1, Kind::K2, Kind::K3}) {
    out.push_back({"grw_ric_" + std::string(kind_label(k)),
                   max_abs_diff(b[k].ricci, ricg - g * n1) / s});
  }
  out.push_back({"grw_ric_4", max_abs_diff(b[Kind::K4].ricci, ricg - (g + pp) * n1) / s});
  out.push_back(
      {"grw_ric_5", max_abs_diff(b[Kind::K5].ricci, ricg - (g * 2.0 + pp) * (0.5 * n1)) / s});

  const Tensor np = nabla_g_pi(c);
  const Tensor nP = nabla_g_P(c);
  const Tensor lpi = lie_P_pi(c);
  double along = 0.0, on_p = 0.0, tp = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double a = 0.0, bb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      a += c.P(j) * np(j, x);
      bb += np(x, j) * c.P(j);
    }
    along = std::max(along, std::abs(a));
    on_p = std::max(on_p, std::abs(bb));
    for (std::size_t k = 0; k < n; ++k) {
      double t = 0.0;
      for (std::size_t j = 0; j < n; ++j) t += c.P(j) * c.torsion(k, j, x);
      tp = std::max(tp, std::abs(t - nP(k, x)));
    }
  }
  out.push_back({"nabla_P_pi=0", along / s});
  out.push_back({"nabla_X_pi(P)=0", on_p / s});
  out.push_back({"lie_P_pi=0", lpi.max_abs() / s});
  out.push_back({"torsion(P,X)=nabla_X_P", tp / s});
  return out;
}

std::vector<NamedResidual> grw_nonvanishing(const CurvatureBundle& b, const SSConnection& c) {
  const double n1 = static_cast<double>(c.dim()) - 1.0;
  double p1 = 0.0;
  for (std::size_t k = 0; k < c.dim(); ++k) p1 += std::abs(c.P(k));
  const double p1sq = p1 * p1;
  auto ratio = [&](Kind k, double lambda) {
    return p1sq == 0.0 ? 0.0 : b[k].ricci.max_abs() / (lambda / p1sq);
  };
  return {
      {"ric_0_nonzero", ratio(Kind::K0, 0.25 * n1)},
      {"ric_4_nonzero", ratio(Kind::K4, n1)},
      {"ric_5_nonzero", ratio(Kind::K5, 0.5 * n1)},
  };
}

PerfectFluidFit perfect_fluid_kind(Kind k, const CurvatureBundle& b, const SSConnection& c,
                                   double tol) {
  PerfectFluidFit out;
  out.fit = fit_quasi_einstein(b.g, b[k].ricci, c.pi, tol);
  out.perfect_fluid = judge(out.fit.residual, tol);
  if (k == Kind::G) {
    const double n = static_cast<double>(c.dim());
    const double s = c.frame.residual_scale();
    out.a_minus_b_residual = std::abs(out.fit.a - out.fit.b - (n - 1.0)) / s;
    const double q = b[Kind::G].scalar / (n - 1.0);
    const Tensor rewrite = b.g * (q - 1.0) + outer(c.pi, c.pi) * (q - n);
    out.rewrite_residual = max_abs_diff(b[Kind::G].ricci, rewrite) / s;
  }
  return out;
}

}  // namespace ssmc
