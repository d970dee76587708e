#include "ssmc/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ssmc/errors.hpp"

namespace ssmc {

std::size_t AnalysisReport::failed_checks() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Record& r) {
    return r.type == RecordType::Check && r.status != Status::Pass;
  }));
}

std::size_t AnalysisReport::total_checks() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const Record& r) { return r.type == RecordType::Check; }));
}

namespace {

struct PointResult {
  std::vector<Record> records;
  bool ok = false;
  Verdict concircular;
  Verdict grw;
  std::array<Verdict, 7> einstein_type;
  Verdict quasi_einstein;
  VectorFlags flags;
  double omega_fit = 0.0;
  double r_g = 0.0;
  double qe_a = 0.0;
  double qe_b = 0.0;
  std::optional<PhantomPoint> phantom;
};

class Emitter {
 public:
  Emitter(std::vector<Record>& out, std::size_t point) : out_(out), point_(point) {}

  void check(std::string name, double residual, double tol, std::string note = {}) {
    check_status(std::move(name), residual, residual <= tol, std::move(note));
  }
  void check_status(std::string name, double residual, bool pass, std::string note = {}) {
    out_.push_back({RecordType::Check, std::move(name), point_, residual,
                    pass ? Status::Pass : Status::Fail, std::move(note)});
  }
  void verdict(std::string name, const Verdict& v) {
    out_.push_back({RecordType::Verdict, std::move(name), point_, v.residual, v.status, {}});
  }
  void value(std::string name, double v) {
    out_.push_back({RecordType::Value, std::move(name), point_, v, Status::Pass, {}});
  }

 private:
  std::vector<Record>& out_;
  std::size_t point_;
};

Verdict judge(double residual, double tol) {
  return {residual <= tol ? Status::Pass : Status::Fail, residual};
}

std::string label(Kind k) { return std::string(kind_label(k)); }

bool constant_fluid(const FluidParams& fp) {
  return fp.sigma.is_constant() && fp.p.is_constant() && fp.rho_expr().is_constant();
}

PointResult analyze_point(const AnalysisConfig& cfg, std::size_t index,
                          const std::vector<double>& point) {
  PointResult res;
  Emitter emit(res.records, index);
  const double tol = cfg.tol;
  try {
    const PointFrame f = frame_at(cfg.metric, point);
    const SSConnection c = build_connection(f, cfg.P);
    const CurvatureBundle b = curvature_family(c);
    const std::size_t n = f.dim();
    const double s = f.residual_scale();

    if (cfg.signature != SignatureExpectation::Any) {
      const bool want_lorentz = cfg.signature == SignatureExpectation::Lorentzian;
      const bool ok = want_lorentz ? f.signature.lorentzian() : f.signature.riemannian();
      emit.check_status("signature", ok ? 0.0 : 1.0, ok);
    }

    // Structural identities of the connection.
    const TensorField gfield{f.g, f.dg};
    emit.check("metricity_levi_civita", covariant_derivative(gfield, f.gamma).max_abs() / s, tol);
    emit.check("metricity_semi_symmetric", covariant_derivative(gfield, c.gamma1).max_abs() / s,
               tol);
    double anti = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          anti = std::max(anti, std::abs(c.gamma1(k, i, j) - c.gamma1(k, j, i) - c.torsion(k, i, j)));
        }
      }
    }
    emit.check("torsion_antisymmetric_part", anti, 1e-14);

    emit.value("omega", c.omega);
    emit.value("g(P,P)", c.pi_P);
    emit.value("r_g", b[Kind::G].scalar);
    res.r_g = b[Kind::G].scalar;

    const ConcircularCheck conc = check_concircular(c, tol);
    const ConcircularCheck sconc = s_concircular_check(c, tol);
    res.concircular = {conc.holds ? Status::Pass : Status::Fail, conc.residual};
    emit.verdict("concircular", res.concircular);
    emit.check_status("concircular_equals_s_concircular", std::abs(conc.residual - sconc.residual),
                      conc.holds == sconc.holds);
    emit.value("closedness", closedness_residual(c));

    if (conc.holds) {
      for (Kind k : kTorsionKinds) {
        const Tensor cf = closed_form_ricci(k, c);
        emit.check("closed_form_ricci_" + label(k),
                   max_abs_diff(b[k].ricci, cf) / (1.0 + cf.max_abs()), tol);
        const double cs = closed_form_scalar(k, c);
        emit.check("closed_form_scalar_" + label(k),
                   std::abs(b[k].scalar - cs) / (1.0 + std::abs(cs)), tol);
      }
      if (auto r = nabla1_P(c, tol).closed_form_residual) emit.check("nabla1_P_closed_form", *r, tol);
      for (const NamedResidual& r : concircular_identity_suite(c)) emit.check(r.name, r.residual, tol);
      const EinsteinRelations er = einstein_relations(b, c, tol);
      for (const NamedResidual& r : er.residuals) emit.check(r.name, r.residual, tol);
      emit.check_status("einstein_tensor_invariance", 0.0, er.invariant);
      const LieResult lie = lie_g_nonsym(c, tol);
      emit.check("lie1_P_g_conformal", lie.conformal_residual, tol);
      emit.verdict("p_connection", judge(lie.killing_residual, tol));
    }

    for (Kind k : kAllKinds) {
      res.einstein_type[static_cast<std::size_t>(k)] = einstein_type(k, b, tol);
      emit.verdict(k == Kind::G ? "einstein" : "einstein_type_" + label(k),
                   res.einstein_type[static_cast<std::size_t>(k)]);
    }
    if (conc.holds) {
      const bool e = res.einstein_type[0].pass();
      const bool agree = e == res.einstein_type[2].pass() && e == res.einstein_type[3].pass() &&
                         e == res.einstein_type[4].pass();
      emit.check_status("einstein_iff_types_1_2_3", 0.0, agree);
    }

    const QuasiEinsteinFit qe = fit_quasi_einstein(b.g, b[Kind::G].ricci, c.pi, tol);
    res.quasi_einstein = judge(qe.residual, tol);
    if (!qe.b_identifiable && res.quasi_einstein.pass()) {
      res.quasi_einstein.status = Status::Indeterminate;
    }
    res.qe_a = qe.a;
    res.qe_b = qe.b;
    emit.verdict("quasi_einstein", res.quasi_einstein);
    emit.value("quasi_einstein_a", qe.a);
    emit.value("quasi_einstein_b", qe.b);
    if (f.signature.lorentzian()) {
      for (Kind k : kAllKinds) {
        emit.verdict("perfect_fluid_" + label(k), perfect_fluid_kind(k, b, c, tol).perfect_fluid);
      }
    }

    const GrwPointReport gp = grw_point(c, tol);
    res.grw = gp.verdict;
    emit.verdict("grw", gp.verdict);
    if (gp.verdict.pass()) {
      emit.check("grw_omega_is_1", gp.omega_residual, tol);
      emit.check("grw_nabla1_P_zero", gp.nabla1_P, tol);
      if (auto suite = grw_identity_suite(b, c, tol)) {
        for (const NamedResidual& r : *suite) emit.check(r.name, r.residual, tol);
      }
      emit.check("div_pi_pi=(n-1)pi",
                 max_abs_diff(div_pi_pi(c), c.pi * (static_cast<double>(n) - 1.0)) / s, tol);
      for (const NamedResidual& r : grw_nonvanishing(b, c)) emit.value(r.name, r.residual);
      const PerfectFluidFit pf = perfect_fluid_kind(Kind::G, b, c, tol);
      if (pf.perfect_fluid.pass()) {
        emit.check("perfect_fluid_a_minus_b", *pf.a_minus_b_residual, tol);
        emit.check("perfect_fluid_rewrite", *pf.rewrite_residual, tol);
      }
      for (Kind k : {Kind::K0, Kind::K4, Kind::K5}) {
        if (!res.einstein_type[static_cast<std::size_t>(k)].pass()) continue;
        const GrwEinsteinTypeForm form = grw_einstein_type_form(k, n);
        const Tensor expect = b.g * form.a + outer(c.pi, c.pi) * form.b;
        emit.check("grw_einstein_type_" + label(k) + "_ricci",
                   max_abs_diff(b[Kind::G].ricci, expect) / s, tol);
        emit.check("grw_einstein_type_" + label(k) + "_scalar",
                   std::abs(b[Kind::G].scalar - form.r) / (1.0 + form.r), tol);
      }
    }

    const VectorPointReport vr = classify_vector_at(cfg.metric, cfg.P, point, tol);
    res.flags = vr.flags;
    res.omega_fit = vr.fit.omega;
    emit.value("torse_forming_omega", vr.fit.omega);
    const auto violations = taxonomy_violations(vr.flags);
    emit.check_status("taxonomy_lattice", static_cast<double>(violations.size()), violations.empty(),
                      violations.empty() ? "" : violations.front());

    if (cfg.fluid) {
      const FluidParams& fp = *cfg.fluid;
      const EfeResidual efe = efe_residual(b, fp, f, c.pi);
      emit.check("field_equations", efe.normalized, tol);
      const Tensor reduced = div_tau(fp, c, DivMode::Reduced);
      const Tensor full = div_tau(fp, c, DivMode::Full);
      emit.value("div_tau_reduced", reduced.max_abs());
      emit.value("div_tau_full", full.max_abs());
      if (constant_fluid(fp)) {
        emit.check("div_tau_reduced_equals_full", max_abs_diff(reduced, full) / s, tol);
      }
      const SSConnection* one = &c;
      const PhantomReport ph = phantom_verdict(fp, std::span<const SSConnection>(one, 1),
                                               gp.verdict.pass(), tol);
      const PhantomPoint& pt = ph.points.front();
      res.phantom = pt;
      emit.check_status("div_tau_zero_iff_barrier", pt.div_tau, pt.equivalence);
      emit.verdict("efe_compatible", {pt.div_tau_zero ? Status::Pass : Status::Fail, pt.div_tau});
      emit.verdict("phantom_barrier",
                   {pt.barrier ? Status::Pass : Status::Fail, std::abs(pt.factor)});
      if (pt.w) emit.value("w", *pt.w);
    }
    res.ok = true;
  } catch (const Error& e) {
    res.records.clear();
    emit.check_status("evaluation", std::numeric_limits<double>::infinity(), false, e.what());
  }
  return res;
}

}  // namespace

AnalysisReport run_analysis(const AnalysisConfig& cfg, unsigned threads) {
  AnalysisReport rep;
  rep.label = cfg.label;
  rep.coords = cfg.coords;
  rep.points = sample_points(cfg.sampling, cfg.dim());
  const std::size_t m = rep.points.size();

  std::vector<PointResult> results(m);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, m));
  if (workers <= 1) {
    for (std::size_t i = 0; i < m; ++i) results[i] = analyze_point(cfg, i, rep.points[i]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < m; i += workers) results[i] = analyze_point(cfg, i, rep.points[i]);
      });
    }
    for (auto& t : pool) t.join();
  }
  const auto first_ok = std::find_if(results.begin(), results.end(),
                                     [](const PointResult& r) { return r.ok; });
  const double first_r = first_ok == results.end() ? 0.0 : first_ok->r_g;
  if (cfg.expected) {
    // A catalog entry's documented classification, checked at each point.
    const BuiltinExpectations& e = *cfg.expected;
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].ok) continue;
      Emitter emit(results[i].records, i);
      const PointResult& r = results[i];
      emit.check_status("expected_concircular", r.concircular.residual,
                        r.concircular.pass() == e.concircular);
      emit.check_status("expected_grw", r.grw.residual, r.grw.pass() == e.grw);
      emit.check_status("expected_einstein", r.einstein_type[0].residual,
                        r.einstein_type[0].pass() == e.einstein);
      const double drift = std::abs(r.r_g - first_r);
      emit.check_status("expected_scalar_curvature", drift,
                        !e.constant_scalar || drift <= 10.0 * cfg.tol);
    }
  }
  for (auto& r : results) {
    rep.records.insert(rep.records.end(), std::make_move_iterator(r.records.begin()),
                       std::make_move_iterator(r.records.end()));
  }

  // Aggregates over the points that evaluated.
  std::vector<const PointResult*> ok;
  for (const auto& r : results) {
    if (r.ok) ok.push_back(&r);
  }
  if (ok.empty()) return rep;
  auto aggregate = [&](const std::string& name, auto get) {
    std::vector<Verdict> vs;
    for (const PointResult* r : ok) vs.push_back(get(*r));
    rep.records.push_back({RecordType::Verdict, name, std::nullopt, conjoin(vs).residual,
                           conjoin(vs).status, {}});
  };
  auto value = [&](const std::string& name, double v) {
    rep.records.push_back({RecordType::Value, name, std::nullopt, v, Status::Pass, {}});
  };
  aggregate("concircular", [](const PointResult& r) { return r.concircular; });
  aggregate("grw", [](const PointResult& r) { return r.grw; });
  for (Kind k : kAllKinds) {
    aggregate(k == Kind::G ? "einstein" : "einstein_type_" + label(k),
              [k](const PointResult& r) { return r.einstein_type[static_cast<std::size_t>(k)]; });
  }
  aggregate("quasi_einstein", [](const PointResult& r) { return r.quasi_einstein; });
  for (const auto& [name, unused] : VectorFlags{}.named()) {
    const std::string flag = name;
    aggregate("vector_" + flag, [&flag](const PointResult& r) {
      for (const auto& [n, v] : r.flags.named()) {
        if (n == flag) return v;
      }
      return Verdict{};
    });
  }

  Spread r_g, a, b, omega;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    r_g.add(ok[i]->r_g, i == 0);
    a.add(ok[i]->qe_a, i == 0);
    b.add(ok[i]->qe_b, i == 0);
    omega.add(ok[i]->omega_fit, i == 0);
  }
  value("r_g_min", r_g.min);
  value("r_g_max", r_g.max);
  rep.records.push_back({RecordType::Verdict, "scalar_curvature_constant", std::nullopt,
                         r_g.width(),
                         r_g.width() <= 10.0 * cfg.tol ? Status::Pass : Status::Fail, {}});
  value("quasi_einstein_a_min", a.min);
  value("quasi_einstein_a_max", a.max);
  value("quasi_einstein_b_min", b.min);
  value("quasi_einstein_b_max", b.max);
  value("torse_forming_omega_min", omega.min);
  value("torse_forming_omega_max", omega.max);

  if (cfg.fluid) {
    aggregate("efe_compatible", [](const PointResult& r) {
      return Verdict{r.phantom->div_tau_zero ? Status::Pass : Status::Fail, r.phantom->div_tau};
    });
    aggregate("phantom_barrier", [](const PointResult& r) {
      return Verdict{r.phantom->barrier ? Status::Pass : Status::Fail, std::abs(r.phantom->factor)};
    });
  }

  return rep;
}

std::string machine_line(const Record& r) {
  const std::string where = r.point ? std::to_string(*r.point) : std::string("all");
  switch (r.type) {
    case RecordType::Check:
      return fmt::format("CHECK {} point={} residual={:.6e} status={}", r.name, where, r.number,
                         status_label(r.status));
    case RecordType::Verdict:
      return fmt::format("VERDICT {} point={} residual={:.6e} status={}", r.name, where, r.number,
                         status_label(r.status));
    case RecordType::Value:
      return fmt::format("VALUE {} point={} value={:.12e}", r.name, where, r.number);
  }
  return {};
}

std::string format_report(const AnalysisReport& report, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Machine) {
    for (const Record& r : report.records) {
      out += machine_line(r);
      out += '\n';
    }
    return out;
  }

  out += fmt::format("analysis: {}  (n = {}, {} points)\n", report.label, report.coords.size(),
                     report.points.size());
  std::optional<std::size_t> current;
  bool in_aggregate = false;
  for (const Record& r : report.records) {
    if (r.point && r.point != current) {
      current = r.point;
      std::string coords;
      for (std::size_t c = 0; c < report.coords.size(); ++c) {
        coords += fmt::format("{}{}={:.6f}", c ? ", " : "", report.coords[c],
                              report.points[*r.point][c]);
      }
      out += fmt::format("\npoint {}: {}\n", *r.point, coords);
    } else if (!r.point && !in_aggregate) {
      in_aggregate = true;
      current.reset();
      out += "\naggregate over points:\n";
    }
    switch (r.type) {
      case RecordType::Check:
        out += fmt::format("  check   {:<36} {:<4}  residual {:.3e}{}\n", r.name,
                           status_label(r.status), r.number, r.note.empty() ? "" : "  (" + r.note + ")");
        break;
      case RecordType::Verdict:
        out += fmt::format("  verdict {:<36} {:<13} residual {:.3e}\n", r.name,
                           status_label(r.status), r.number);
        break;
      case RecordType::Value:
        out += fmt::format("  value   {:<36} {:.10g}\n", r.name, r.number);
        break;
    }
  }
  out += fmt::format("\n{} of {} checks passed\n", report.total_checks() - report.failed_checks(),
                     report.total_checks());
  return out;
}

}  // namespace ssmc
