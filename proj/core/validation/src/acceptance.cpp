#include "ssmc/validation/acceptance.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ssmc/analysis.hpp"
#include "ssmc/validation/fd_oracle.hpp"

namespace ssmc::validation {

bool Criterion::pass() const {
  return !parts.empty() &&
         std::all_of(parts.begin(), parts.end(), [](const Part& p) { return p.pass; });
}

namespace {

/// Tracks the worst residual of a part over points.
class Worst {
 public:
  Worst(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  void add(double r, std::size_t point) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (!seen_ || r > worst_) {
      worst_ = r;
      at_ = point;
    }
    seen_ = true;
  }
  void fail(std::size_t point, std::string note) {
    if (!failed_) {
      failed_ = true;
      at_ = point;
      note_ = std::move(note);
    }
    seen_ = true;
  }
  void note(std::string n) { note_ = std::move(n); }

  Part part() const {
    return {name_, worst_, tol_, seen_ && !failed_ && worst_ <= tol_, at_, note_};
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  std::size_t at_ = 0;
  bool seen_ = false;
  bool failed_ = false;
  std::string note_;
};

std::vector<std::vector<double>> points_for(const BuiltinModel& m, const AcceptanceOptions& o) {
  SamplingSpec s;
  s.count = o.points;
  s.seed = o.seed;
  s.bounds = m.bounds;
  s.singular = m.singular;
  return sample_points(s, m.metric.dim());
}

double rel(const Tensor& a, const Tensor& b) { return max_abs_diff(a, b) / (1.0 + b.max_abs()); }

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return lo + static_cast<double>(rng_() >> 11) * 0x1.0p-53 * (hi - lo);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

// ---------------------------------------------------------------------------

Criterion closed_form_anchor(const AcceptanceOptions& o) {
  Criterion c{1, "closed-form Ricci and scalar curvature of all six kinds", {}};
  const std::vector<std::pair<std::string, std::string>> cases{
      {"minkowski", "minkowski+P=d_x"}, {"desitter-flat", "desitter-flat"},
      {"grw-generic", "grw-generic"}};
  for (const auto& [name, tag] : cases) {
    const BuiltinModel m = builtin(name);
    Worst ric(tag + ".ricci", kClosedFormTol);
    Worst scal(tag + ".scalar", kClosedFormTol);
    bool all_concircular = true;
    const auto pts = points_for(m, o);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const SSConnection conn = build_connection(frame_at(m.metric, pts[i]), m.P);
      const CurvatureBundle b = curvature_family(conn);
      all_concircular = all_concircular && check_concircular(conn).holds;
      for (Kind k : kAllKinds) {
        ric.add(rel(b[k].ricci, closed_form_ricci(k, conn)), i);
        const double cs = closed_form_scalar(k, conn);
        scal.add(std::abs(b[k].scalar - cs) / (1.0 + std::abs(cs)), i);
      }
    }
    if (!all_concircular) {
      ric.note("generator does not satisfy the concircular condition the closed forms assume");
      scal.note("generator does not satisfy the concircular condition the closed forms assume");
    }
    c.parts.push_back(ric.part());
    c.parts.push_back(scal.part());
  }
  return c;
}

Criterion ad_vs_fd(const AcceptanceOptions& o) {
  Criterion c{2, "automatic differentiation against central finite differences", {}};
  std::vector<std::pair<std::string, BuiltinParams>> cases;
  for (const auto& name : builtin_names()) cases.push_back({name, {}});
  cases.push_back({"grw", {{"gstar[x,y]", "0.2*sin(x+y)"}, {"gstar", "1+0.1*z^2, 2, exp(x)"}}});
  for (const auto& [name, params] : cases) {
    const BuiltinModel m = builtin(name, params);
    const std::string tag = params.empty() ? name : name + "(off-diagonal)";
    Worst gamma(tag + ".christoffel", kFdTol);
    Worst riem(tag + ".riemann", kFdTol);
    const auto pts = points_for(m, o);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const PointFrame f = frame_at(m.metric, pts[i]);
      gamma.add(max_abs_diff(f.gamma, fd_christoffel(m.metric, pts[i], kFdStep)), i);
      riem.add(max_abs_diff(lc_riemann(f), fd_riemann(m.metric, pts[i], kFdStep)), i);
    }
    c.parts.push_back(gamma.part());
    c.parts.push_back(riem.part());
  }
  return c;
}

Criterion de_sitter_chain(const AcceptanceOptions& o) {
  Criterion c{3, "de Sitter chain", {}};
  const BuiltinModel m = builtin("desitter-flat");
  const double tol = kChainTol;
  Worst omega("omega=1", tol), n1p("nabla1_P=0", tol), grw("grw_verdict", tol),
      ric("ric_g=3g", tol), r("r_g=12", tol), ric1("ric_1=0", tol), et("einstein_type_1_2_3", tol),
      ric0("ric_0=-3/4pi(x)pi", tol), r0("r_0=0.75", tol), r4("r_4=3", tol),
      qe("quasi_einstein(a,b)=(3,0)", tol), amb("a-b=n-1", tol);
  const auto pts = points_for(m, o);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const SSConnection conn = build_connection(frame_at(m.metric, pts[i]), m.P);
    const CurvatureBundle b = curvature_family(conn);
    const double s = conn.frame.residual_scale();
    omega.add(std::abs(conn.omega - 1.0), i);
    n1p.add(nabla1_P(conn, tol).value.max_abs() / s, i);
    const GrwPointReport g = grw_point(conn, tol);
    grw.add(g.verdict.residual, i);
    if (!g.verdict.pass()) grw.fail(i, "GRW verdict failed");
    ric.add(max_abs_diff(b[Kind::G].ricci, b.g * 3.0) / s, i);
    r.add(std::abs(b[Kind::G].scalar - 12.0), i);
    ric1.add(b[Kind::K1].ricci.max_abs() / s, i);
    for (Kind k : {Kind::K1, Kind::K2, Kind::K3}) {
      const Verdict v = einstein_type(k, b, tol);
      et.add(v.residual, i);
      if (!v.pass()) et.fail(i, "Einstein type " + std::string(kind_label(k)) + " failed");
    }
    ric0.add(max_abs_diff(b[Kind::K0].ricci, outer(conn.pi, conn.pi) * -0.75) / s, i);
    r0.add(std::abs(b[Kind::K0].scalar - 0.75), i);
    r4.add(std::abs(b[Kind::K4].scalar - 3.0), i);
    const QuasiEinsteinFit fit = fit_quasi_einstein(b.g, b[Kind::G].ricci, conn.pi, tol);
    qe.add(std::max(std::abs(fit.a - 3.0), std::abs(fit.b)), i);
    amb.add(std::abs(fit.a - fit.b - 3.0), i);
  }
  for (const Worst* w : {&omega, &n1p, &grw, &ric, &r, &ric1, &et, &ric0, &r0, &r4, &qe, &amb}) {
    c.parts.push_back(w->part());
  }
  return c;
}

Criterion grw_identities(const AcceptanceOptions& o) {
  Criterion c{4, "GRW identity suite on a generic GRW space-time", {}};
  const BuiltinModel m = builtin("grw-generic");
  const double tol = kGrwTol;
  std::vector<Worst> suite;
  Worst verdict("grw_verdict", tol), divpp("div_pi_pi=(n-1)pi", tol), amb("a-b=3", tol);
  const auto pts = points_for(m, o);
  Spread r;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const SSConnection conn = build_connection(frame_at(m.metric, pts[i]), m.P);
    const CurvatureBundle b = curvature_family(conn);
    const double s = conn.frame.residual_scale();
    const auto ids = grw_identity_suite(b, conn, tol);
    if (!ids) {
      verdict.fail(i, "GRW precondition failed");
      continue;
    }
    verdict.add(grw_point(conn, tol).verdict.residual, i);
    if (suite.empty()) {
      for (const NamedResidual& id : *ids) suite.emplace_back(id.name, tol);
    }
    for (std::size_t k = 0; k < ids->size(); ++k) suite[k].add((*ids)[k].residual, i);
    divpp.add(max_abs_diff(div_pi_pi(conn), conn.pi * 3.0) / s, i);
    const QuasiEinsteinFit fit = fit_quasi_einstein(b.g, b[Kind::G].ricci, conn.pi, tol);
    amb.add(std::max(std::abs(fit.a - fit.b - 3.0), fit.residual), i);
    r.add(b[Kind::G].scalar, i == 0);
  }
  c.parts.push_back(verdict.part());
  for (const Worst& w : suite) c.parts.push_back(w.part());
  c.parts.push_back(divpp.part());
  c.parts.push_back(amb.part());
  // Scalar curvature must vary: the "residual" here is the spread, and the
  // part passes when it exceeds ten times the tolerance.
  c.parts.push_back({"r_g_not_constant", r.width(), 10.0 * tol, r.width() > 10.0 * tol, 0,
                     fmt::format("r_g in [{:.6f}, {:.6f}]", r.min, r.max)});
  return c;
}

Criterion einstein_type_equivalences(const AcceptanceOptions& o) {
  Criterion c{5, "Einstein-type equivalences of kinds 0, 4, 5 on synthetic Ricci data", {}};
  const double tol = kDefaultTolerance;
  Uniform u(o.seed ^ 0x5eedULL);
  for (std::size_t n : {std::size_t{4}, std::size_t{5}}) {
    for (Kind k : {Kind::K0, Kind::K4, Kind::K5}) {
      const GrwEinsteinTypeForm form = grw_einstein_type_form(k, n);
      const std::string tag = fmt::format("kind_{}.n{}", kind_label(k), n);
      Worst r_ok(tag + ".r", tol);
      std::size_t false_verdicts = 0;
      for (std::size_t trial = 0; trial < kEquivalenceTrials; ++trial) {
        // Random Lorentzian metric g = Aᵀ diag(-1, 1, ..., 1) A and a covector
        // π with g^{ij} π_i π_j = -1.
        const auto N = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(N, N);
        for (Eigen::Index i = 0; i < N; ++i) {
          for (Eigen::Index j = 0; j < N; ++j) A(i, j) += u(-0.3, 0.3);
        }
        Eigen::VectorXd eta = Eigen::VectorXd::Ones(N);
        eta(0) = -1.0;
        const Eigen::MatrixXd G = A.transpose() * eta.asDiagonal() * A;
        // π = Aᵀ e with e a unit timelike covector in the orthonormal frame.
        Eigen::VectorXd e(N);
        double spatial = 0.0;
        for (Eigen::Index i = 1; i < N; ++i) {
          e(i) = u(-0.5, 0.5);
          spatial += e(i) * e(i);
        }
        e(0) = std::sqrt(1.0 + spatial);
        const Eigen::VectorXd pv = A.transpose() * e;

        RicciData d{Tensor(n, {Slot::Down, Slot::Down}), Tensor(n, {Slot::Down, Slot::Down}),
                    Tensor(n, {Slot::Down})};
        for (std::size_t i = 0; i < n; ++i) {
          d.pi(i) = pv(static_cast<Eigen::Index>(i));
          for (std::size_t j = 0; j < n; ++j) {
            d.g(i, j) = G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          }
        }
        d.ric = d.g * form.a + outer(d.pi, d.pi) * form.b;
        const Tensor ginv = [&] {
          const Eigen::MatrixXd gi = G.inverse();
          Tensor t(n, {Slot::Up, Slot::Up});
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              t(i, j) = gi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
          }
          return t;
        }();
        const double r = trace_g(ginv, d.ric);
        r_ok.add(std::abs(r - form.r) / (1.0 + form.r), trial);
        const EquivalenceReport good = qe_equivalences(k, d, r, tol);
        if (!good.einstein_type.pass() || !good.form.pass() || !good.consistent) ++false_verdicts;

        RicciData bad = d;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i; j < n; ++j) {
            const double delta = kPerturbation * u(-1.0, 1.0);
            bad.ric(i, j) += delta;
            if (i != j) bad.ric(j, i) += delta;
          }
        }
        const EquivalenceReport rep = qe_equivalences(k, bad, trace_g(ginv, bad.ric), tol);
        if (rep.einstein_type.pass() || rep.form.pass() || !rep.consistent) ++false_verdicts;
      }
      c.parts.push_back(r_ok.part());
      c.parts.push_back({tag + ".false_verdicts", static_cast<double>(false_verdicts), 0.0,
                         false_verdicts == 0, 0,
                         fmt::format("{} trials, expected r = {}", kEquivalenceTrials, form.r)});
    }
  }
  return c;
}

Criterion relativity(const AcceptanceOptions& o) {
  Criterion c{6, "field equations, energy-momentum divergence and phantom barrier", {}};
  {
    const BuiltinModel m = builtin("desitter-flat");
    FluidParams fp;
    fp.lambda = 3.0;
    fp.k = 1.0;
    Worst efe("efe_residual(desitter,lambda=3,tau=0)", kEfeTol);
    const auto pts = points_for(m, o);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const PointFrame f = frame_at(m.metric, pts[i]);
      const SSConnection conn = build_connection(f, m.P);
      efe.add(efe_residual(curvature_family(conn), fp, f, conn.pi).max_norm, i);
    }
    c.parts.push_back(efe.part());
  }

  const BuiltinModel m = builtin("grw-generic");
  const auto pts = points_for(m, o);
  std::vector<SSConnection> conns;
  bool grw = true;
  for (const auto& p : pts) {
    conns.push_back(build_connection(frame_at(m.metric, p), m.P));
    grw = grw && grw_point(conns.back()).verdict.pass();
  }
  std::size_t wrong_div = 0, wrong_barrier = 0, wrong_w = 0, cells = 0;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const double sigma = 0.5 * (i + 1);
      const double p = -0.5 * (j + 1);
      FluidParams fp;
      fp.sigma = Expr::number(sigma);
      fp.p = Expr::number(p);
      const bool on_line = std::abs(sigma + p) <= kBarrierTol;
      double worst = 0.0;
      for (const SSConnection& conn : conns) {
        worst = std::max(worst, div_tau(fp, conn, DivMode::Reduced).max_abs());
      }
      if ((worst <= kBarrierTol) != on_line) ++wrong_div;
      const PhantomReport rep = phantom_verdict(fp, conns, grw, kBarrierTol);
      if (rep.barrier != on_line || !rep.equivalence) ++wrong_barrier;
      if (rep.barrier) {
        for (const PhantomPoint& pt : rep.points) {
          if (!pt.w || std::abs(*pt.w + 1.0) > 1e-12) ++wrong_w;
        }
      }
      ++cells;
    }
  }
  const std::string grid = fmt::format("{} cells of the (sigma, p) grid", cells);
  c.parts.push_back({"grw_precondition", grw ? 0.0 : 1.0, 0.0, grw, 0, {}});
  c.parts.push_back({"div_tau_zero_iff_sigma+p=0", static_cast<double>(wrong_div), 0.0,
                     wrong_div == 0, 0, grid});
  c.parts.push_back({"phantom_barrier_on_line", static_cast<double>(wrong_barrier), 0.0,
                     wrong_barrier == 0, 0, grid});
  c.parts.push_back({"w=-1_on_barrier", static_cast<double>(wrong_w), 0.0, wrong_w == 0, 0, {}});
  return c;
}

Criterion concircular_equivalence(const AcceptanceOptions& o) {
  Criterion c{7, "concircular and S-concircular conditions agree", {}};
  auto disagreement = [](const SSConnection& conn) {
    return check_concircular(conn).holds != s_concircular_check(conn).holds;
  };
  std::vector<std::pair<std::string, BuiltinParams>> cases;
  for (const auto& name : builtin_names()) cases.push_back({name, {}});
  cases.push_back({"minkowski", {{"P", "1/(1+t), 0, 0, 0"}}});
  cases.push_back({"flrw", {{"P", "t/(1+t^2/2), 0, 0, 0"}}});
  std::size_t bad = 0, total = 0, concircular = 0;
  for (const auto& [name, params] : cases) {
    const BuiltinModel m = builtin(name, params);
    BuiltinModel bounded = m;
    if (name == "minkowski" && !params.empty()) bounded.bounds[0] = {-0.5, 1.0};
    for (const auto& p : points_for(bounded, o)) {
      const SSConnection conn = build_connection(frame_at(m.metric, p), m.P);
      bad += disagreement(conn);
      concircular += check_concircular(conn).holds;
      ++total;
    }
  }
  c.parts.push_back({"builtins", static_cast<double>(bad), 0.0, bad == 0, 0,
                     fmt::format("{} points, {} concircular", total, concircular)});

  Uniform u(o.seed ^ 0xc0ffeeULL);
  std::size_t pair_bad = 0, pair_total = 0, pair_conc = 0;
  const std::vector<std::string> coords = catalog_coordinates(4);
  for (std::size_t trial = 0; trial < kRandomPairs; ++trial) {
    // Even trials: warped products with f = c e^t and P = ∂_t (concircular).
    // Odd trials: perturbed metrics and generic P.
    const bool perturbed = trial % 2 == 1;
    const double eps = perturbed ? u(0.05, 0.3) : 0.0;
    const double scale = u(0.5, 2.0);
    std::vector<std::string> diag{
        fmt::format("-1 + {:.17g}*sin(x)", eps),
        fmt::format("{:.17g}*exp(2*t)*(1 + {:.17g}*cos(y))", scale * scale, eps),
        fmt::format("{:.17g}*exp(2*t)", scale * scale),
        fmt::format("{:.17g}*exp(2*t)*(1 + {:.17g}*x^2)", scale * scale, eps)};
    std::vector<Expr> entries;
    for (const auto& d : diag) entries.push_back(parse(d, coords));
    const MetricSpec metric = MetricSpec::diagonal(coords, entries);
    VectorFieldSpec P;
    if (perturbed) {
      for (std::size_t k = 0; k < 4; ++k) {
        P.components.push_back(parse(
            fmt::format("{:.17g} + {:.17g}*t + {:.17g}*x", u(-1, 1), u(-1, 1), u(-1, 1)), coords));
      }
    } else {
      P.components = {Expr::number(1.0), Expr::number(0.0), Expr::number(0.0), Expr::number(0.0)};
    }
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<double> p{u(-1, 1), u(-1, 1), u(-1, 1), u(-1, 1)};
      const SSConnection conn = build_connection(frame_at(metric, p), P);
      pair_bad += disagreement(conn);
      pair_conc += check_concircular(conn).holds;
      ++pair_total;
    }
  }
  c.parts.push_back({"random_pairs", static_cast<double>(pair_bad), 0.0, pair_bad == 0, 0,
                     fmt::format("{} pairs, {} points, {} concircular", kRandomPairs, pair_total,
                                 pair_conc)});
  return c;
}

Criterion determinism(const AcceptanceOptions& o) {
  Criterion c{8, "deterministic machine reports", {}};
  for (const std::string name : {"desitter-flat", "grw-generic"}) {
    AnalysisConfig cfg = config_from_builtin(builtin(name));
    cfg.sampling.seed = o.seed;
    cfg.sampling.count = o.points;
    const std::string serial = format_report(run_analysis(cfg, 1), ReportFormat::Machine);
    const std::string again = format_report(run_analysis(cfg, 1), ReportFormat::Machine);
    const std::string threaded = format_report(run_analysis(cfg, 4), ReportFormat::Machine);
    const bool same = serial == again && serial == threaded;
    c.parts.push_back({name + ".byte_identical", same ? 0.0 : 1.0, 0.0, same, 0,
                       fmt::format("{} bytes", serial.size())});
  }
  return c;
}

std::vector<Criterion> run_acceptance(const AcceptanceOptions& o) {
  return {closed_form_anchor(o), ad_vs_fd(o),   de_sitter_chain(o),
          grw_identities(o),     einstein_type_equivalences(o), relativity(o),
          concircular_equivalence(o), determinism(o)};
}

std::string format_acceptance(const std::vector<Criterion>& results, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Machine) {
    for (const Criterion& c : results) {
      for (const Part& p : c.parts) {
        out += fmt::format("CHECK acceptance.{}.{} point={} residual={:.6e} status={}\n", c.id,
                           p.name, p.point, p.residual, p.pass ? "PASS" : "FAIL");
      }
    }
    return out;
  }
  std::size_t passed = 0;
  for (const Criterion& c : results) {
    passed += c.pass();
    out += fmt::format("[{}] {}. {}\n", c.pass() ? "PASS" : "FAIL", c.id, c.title);
    for (const Part& p : c.parts) {
      out += fmt::format("       {:<4} {:<44} residual {:.3e}  tol {:.1e}{}\n",
                         p.pass ? "ok" : "FAIL", p.name, p.residual, p.tolerance,
                         p.note.empty() ? "" : "  " + p.note);
    }
  }
  out += fmt::format("{} of {} criteria passed\n", passed, results.size());
  return out;
}

}  // namespace ssmc::validation
