#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssmc/geometry.hpp"

namespace ssmc {

/// Closed interval for random sampling of one coordinate.
struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// What a catalog entry is known to satisfy with its default parameters.
struct BuiltinExpectations {
  bool concircular = false;      ///< ∇π = ωg + π⊗π at every point
  bool grw = false;              ///< unit timelike torse-forming P
  bool einstein = false;         ///< Ric^g = (r/n) g
  bool constant_scalar = false;  ///< r^g constant over the chart
};

struct BuiltinModel {
  std::string name;
  MetricSpec metric;
  VectorFieldSpec P;
  std::vector<Interval> bounds;              ///< per coordinate
  std::vector<std::vector<double>> singular;  ///< per coordinate
  std::optional<BuiltinExpectations> expected;  ///< absent once parameters are overridden
};

using BuiltinParams = std::map<std::string, std::string>;

/// Chart coordinates used by the catalog: t, x, y, z for n ≤ 4, else
/// t, x1, ..., x{n-1}.
std::vector<std::string> catalog_coordinates(std::size_t n);

/// Names of all catalog entries.
const std::vector<std::string>& builtin_names();

/// Parameters: n (dimension), f (warping function of t, flrw/grw), P
/// (comma-separated components), gstar (comma-separated diagonal of the base
/// metric, grw) and gstar[a,b] (one base-metric entry, grw). Throws Error on
/// an unknown name or parameter.
BuiltinModel builtin(const std::string& name, const BuiltinParams& params = {});

}  // namespace ssmc
