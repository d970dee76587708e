#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ssmc/analysis.hpp"
#include "ssmc/errors.hpp"
#include "ssmc/validation/acceptance.hpp"

namespace {

constexpr int kConfigErrorExit = 2;

struct Overrides {
  std::optional<std::string> format;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> points;
};

std::pair<std::string, std::string> split_kv(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ssmc::Error(std::string(what) + " expects key=value, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

void apply(const Overrides& o, ssmc::AnalysisConfig& cfg) {
  if (o.format) cfg.format = *o.format == "machine" ? ssmc::ReportFormat::Machine : ssmc::ReportFormat::Text;
  if (o.tol) cfg.tol = *o.tol;
  if (o.seed) cfg.sampling.seed = *o.seed;
  if (o.points) {
    cfg.sampling.count = *o.points;
    cfg.sampling.points.clear();
  }
}

int report(const ssmc::AnalysisConfig& cfg) {
  const ssmc::AnalysisReport rep = ssmc::run_analysis(cfg);
  std::fputs(ssmc::format_report(rep, cfg.format).c_str(), stdout);
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-symmetric metric connection analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides over;
  app.add_option("--format", over.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--tol", over.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", over.seed, "Seed for random sample points");
  app.add_option("--points", over.points, "Number of random sample points")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Analyse the configuration in a file");
  std::string config_path;
  analyze->add_option("config", config_path, "Config file")->required();

  auto* bi = app.add_subcommand("builtin", "Analyse a catalog space-time");
  std::string name;
  std::vector<std::string> params, fluid;
  bi->add_option("name", name, "minkowski, desitter-flat, flrw, grw-generic or grw")->required();
  bi->add_option("--param", params, "Catalog parameter key=value (n, f, P, gstar, gstar[a,b])");
  bi->add_option("--fluid", fluid,
                 "Fluid parameter key=value (sigma, p, rho, rho_from_pressure, lambda, k)");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigErrorExit;
  }

  try {
    if (*analyze) {
      ssmc::AnalysisConfig cfg = ssmc::load_config(config_path);
      apply(over, cfg);
      return report(cfg);
    }
    if (*bi) {
      ssmc::BuiltinParams bp;
      for (const auto& p : params) {
        auto [k, v] = split_kv(p, "--param");
        bp[k] = v;
      }
      ssmc::AnalysisConfig cfg = ssmc::config_from_builtin(ssmc::builtin(name, bp));
      if (!fluid.empty()) {
        ssmc::FluidParams fp;
        for (const auto& f : fluid) {
          auto [k, v] = split_kv(f, "--fluid");
          ssmc::set_fluid_param(fp, k, v, cfg.coords);
        }
        cfg.fluid = fp;
      }
      apply(over, cfg);
      return report(cfg);
    }
    if (*self) {
      ssmc::validation::AcceptanceOptions opts;
      if (over.seed) opts.seed = *over.seed;
      if (over.points) opts.points = *over.points;
      const auto results = ssmc::validation::run_acceptance(opts);
      const auto fmt = over.format == std::optional<std::string>("machine")
                           ? ssmc::ReportFormat::Machine
                           : ssmc::ReportFormat::Text;
      std::fputs(ssmc::validation::format_acceptance(results, fmt).c_str(), stdout);
      for (const auto& c : results) {
        if (!c.pass()) return 1;
      }
      return 0;
    }
  } catch (const ssmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigErrorExit;
  } catch (const ssmc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigErrorExit;
  }
  return kConfigErrorExit;
}
