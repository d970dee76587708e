#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssmc/catalog.hpp"
#include "ssmc/relativity.hpp"

namespace ssmc {

enum class ReportFormat { Text, Machine };
enum class SignatureExpectation { Any, Lorentzian, Riemannian };

struct SamplingSpec {
  std::size_t count = 16;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> points;  ///< explicit points replace random sampling
  std::vector<Interval> bounds;
  std::vector<std::vector<double>> singular;
};

/// Distance kept from every declared singular value when sampling.
inline constexpr double kSingularMargin = 0.1;

struct AnalysisConfig {
  std::string label;  ///< builtin name, or "custom"
  std::vector<std::string> coords;
  SignatureExpectation signature = SignatureExpectation::Any;
  MetricSpec metric;
  VectorFieldSpec P;
  std::optional<BuiltinExpectations> expected;
  SamplingSpec sampling;
  std::optional<FluidParams> fluid;
  double tol = kDefaultTolerance;
  double fd_step = 1e-5;
  ReportFormat format = ReportFormat::Text;

  std::size_t dim() const noexcept { return coords.size(); }
};

/// Parses the sectioned config format. Throws ConfigError carrying the line.
AnalysisConfig parse_config(std::string_view text);
AnalysisConfig load_config(const std::filesystem::path& path);

/// Config for a catalog entry with default sampling.
AnalysisConfig config_from_builtin(const BuiltinModel& model);

/// Applies one `key=value` fluid setting (sigma, p, rho, rho_from_pressure,
/// lambda, k). Throws Error.
void set_fluid_param(FluidParams& fp, const std::string& key, const std::string& value,
                     const std::vector<std::string>& coords);

/// Sample points: the explicit list when given, otherwise `count` points drawn
/// uniformly from the bounds with std::mt19937_64 (53-bit doubles from the top
/// bits of each draw), redrawing coordinates that fall within kSingularMargin
/// of a singular value.
std::vector<std::vector<double>> sample_points(const SamplingSpec& s, std::size_t n);

}  // namespace ssmc
