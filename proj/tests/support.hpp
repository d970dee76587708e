#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ssmc/catalog.hpp"
#include "ssmc/connection.hpp"
#include "ssmc/expr.hpp"

namespace ssmc::test {

inline const std::vector<std::string>& txyz() {
  static const std::vector<std::string> c{"t", "x", "y", "z"};
  return c;
}

inline Expr ex(const std::string& s, const std::vector<std::string>& coords = txyz()) {
  return parse(s, coords);
}

inline MetricSpec diag_metric(std::vector<std::string> entries,
                              const std::vector<std::string>& coords = txyz()) {
  std::vector<Expr> e;
  for (const auto& s : entries) e.push_back(ex(s, coords));
  return MetricSpec::diagonal(coords, e);
}

inline VectorFieldSpec field(std::vector<std::string> comps,
                             const std::vector<std::string>& coords = txyz()) {
  VectorFieldSpec P;
  for (const auto& s : comps) P.components.push_back(ex(s, coords));
  return P;
}

inline MetricSpec de_sitter() { return diag_metric({"-1", "exp(2*t)", "exp(2*t)", "exp(2*t)"}); }
inline MetricSpec minkowski() { return diag_metric({"-1", "1", "1", "1"}); }
inline MetricSpec flrw_t() { return diag_metric({"-1", "t^2", "t^2", "t^2"}); }

inline SSConnection connection_at(const MetricSpec& m, const VectorFieldSpec& P,
                                  std::vector<double> p) {
  return build_connection(frame_at(m, p), P);
}

/// Reproducible points in [lo, hi]^n.
inline std::vector<std::vector<double>> random_points(std::size_t count, std::size_t n,
                                                      double lo, double hi,
                                                      std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<std::vector<double>> out(count, std::vector<double>(n));
  for (auto& p : out) {
    for (auto& v : p) v = u(rng);
  }
  return out;
}

}  // namespace ssmc::test
