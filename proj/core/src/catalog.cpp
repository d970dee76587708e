#include "ssmc/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "ssmc/errors.hpp"

namespace ssmc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::size_t parse_dimension(const BuiltinParams& params, std::size_t fallback) {
  auto it = params.find("n");
  if (it == params.end()) return fallback;
  std::size_t n = 0;
  const std::string& v = it->second;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || ptr != v.data() + v.size() || n < 2 || n > 16) {
    throw Error("builtin parameter n must be an integer in [2, 16], got '" + v + "'");
  }
  return n;
}

Expr parse_in(const std::string& text, const std::vector<std::string>& coords,
              const std::string& what) {
  try {
    return parse(text, coords);
  } catch (const ParseError& e) {
    throw Error(what + ": " + e.what());
  }
}

Expr square(Expr e) { return Expr::binary(BinaryOp::Pow, std::move(e), Expr::number(2.0)); }

Expr times(Expr a, Expr b) { return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b)); }

VectorFieldSpec unit_vector(std::size_t n, std::size_t k) {
  VectorFieldSpec P;
  for (std::size_t i = 0; i < n; ++i) P.components.push_back(Expr::number(i == k ? 1.0 : 0.0));
  return P;
}

/// −dt² + f(t)² g*.
MetricSpec warped(const std::vector<std::string>& coords, const Expr& f, const MetricSpec& base) {
  MetricSpec m(coords);
  m.set(0, 0, Expr::number(-1.0));
  const Expr f2 = square(f);
  for (std::size_t a = 1; a < coords.size(); ++a) {
    for (std::size_t b = a; b < coords.size(); ++b) {
      const Expr& e = base(a - 1, b - 1);
      if (e.kind() == Expr::Kind::Number && e.number_value() == 0.0) continue;
      m.set(a, b, times(f2, e));
    }
  }
  return m;
}

MetricSpec flat_base(std::size_t m) {
  std::vector<std::string> none(m);
  std::vector<Expr> ones(m, Expr::number(1.0));
  return MetricSpec::diagonal(none, ones);
}

}  // namespace

std::vector<std::string> catalog_coordinates(std::size_t n) {
  if (n <= 4) {
    std::vector<std::string> all{"t", "x", "y", "z"};
    all.resize(n);
    return all;
  }
  std::vector<std::string> c{"t"};
  for (std::size_t i = 1; i < n; ++i) c.push_back("x" + std::to_string(i));
  return c;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"minkowski", "desitter-flat", "flrw",
                                              "grw-generic", "grw"};
  return names;
}

BuiltinModel builtin(const std::string& name, const BuiltinParams& params) {
  std::set<std::string> allowed{"n", "P"};
  if (name == "flrw") allowed.insert("f");
  if (name == "grw") {
    allowed.insert("f");
    allowed.insert("gstar");
  }
  for (const auto& [key, value] : params) {
    const bool entry = name == "grw" && key.starts_with("gstar[");
    if (!allowed.contains(key) && !entry) {
      throw Error("builtin '" + name + "' has no parameter '" + key + "'");
    }
  }

  const std::size_t n = parse_dimension(params, 4);
  const std::vector<std::string> coords = catalog_coordinates(n);
  std::vector<std::string> time_only{coords[0]};
  // Base coordinates only: the time slot is unnamed, so any reference to t
  // in g* is rejected by the parser.
  std::vector<std::string> base_coords = coords;
  base_coords[0].clear();

  BuiltinModel m;
  m.name = name;
  m.bounds.assign(n, Interval{});
  m.singular.assign(n, {});
  const bool defaults = !params.contains("P") && !params.contains("f") &&
                        !params.contains("gstar") &&
                        std::none_of(params.begin(), params.end(),
                                     [](const auto& kv) { return kv.first.starts_with("gstar["); });

  if (name == "minkowski") {
    std::vector<Expr> d(n, Expr::number(1.0));
    d[0] = Expr::number(-1.0);
    m.metric = MetricSpec::diagonal(coords, d);
    m.P = unit_vector(n, 1);
    if (defaults) m.expected = BuiltinExpectations{false, false, true, true};
  } else if (name == "desitter-flat") {
    const Expr f = parse("exp(t)", time_only);
    m.metric = warped(coords, f, flat_base(n - 1));
    m.P = unit_vector(n, 0);
    if (defaults) m.expected = BuiltinExpectations{true, true, true, true};
  } else if (name == "flrw") {
    auto it = params.find("f");
    const std::string ftext = it == params.end() ? "t" : it->second;
    const Expr f = parse_in(ftext, time_only, "warping function f(t)");
    m.metric = warped(coords, f, flat_base(n - 1));
    m.P = unit_vector(n, 0);
    // Power-law warps degenerate at t = 0; sample an expanding window.
    m.bounds[0] = {0.5, 2.0};
    m.singular[0] = {0.0};
    if (defaults) m.expected = BuiltinExpectations{false, false, false, false};
  } else if (name == "grw-generic") {
    if (n < 3) throw Error("builtin 'grw-generic' needs n >= 3");
    // Hyperbolic base dx² + e^{2x}(dy² + ...): curved, so the
    // space-time is a perfect fluid with non-constant scalar curvature.
    std::vector<Expr> d;
    d.push_back(Expr::number(1.0));
    const Expr e2x = parse_in("exp(2*" + coords[1] + ")", base_coords, "base metric");
    for (std::size_t i = 2; i < n; ++i) d.push_back(e2x);
    std::vector<std::string> bc(coords.begin() + 1, coords.end());
    const Expr f = parse("exp(t)", time_only);
    m.metric = warped(coords, f, MetricSpec::diagonal(bc, d));
    m.P = unit_vector(n, 0);
    if (defaults) m.expected = BuiltinExpectations{true, true, false, false};
  } else if (name == "grw") {
    auto it = params.find("f");
    const Expr f = parse_in(it == params.end() ? "exp(t)" : it->second, time_only,
                            "warping function f(t)");
    std::vector<std::string> bc(coords.begin() + 1, coords.end());
    MetricSpec base(bc);
    for (std::size_t a = 0; a + 1 < n; ++a) base.set(a, a, Expr::number(1.0));
    if (auto g = params.find("gstar"); g != params.end()) {
      const auto items = split_list(g->second);
      if (items.size() != n - 1) {
        throw Error("gstar needs " + std::to_string(n - 1) + " diagonal entries, got " +
                    std::to_string(items.size()));
      }
      for (std::size_t a = 0; a + 1 < n; ++a) {
        base.set(a, a, parse_in(items[a], base_coords, "gstar"));
      }
    }
    for (const auto& [key, value] : params) {
      if (!key.starts_with("gstar[")) continue;
      const auto close = key.find(']');
      const auto parts = split_list(std::string_view(key).substr(6, close - 6));
      if (close != key.size() - 1 || parts.size() != 2) {
        throw Error("malformed base-metric entry '" + key + "'");
      }
      std::size_t idx[2];
      for (int s = 0; s < 2; ++s) {
        auto pos = std::find(bc.begin(), bc.end(), parts[s]);
        if (pos == bc.end()) throw Error("'" + parts[s] + "' is not a base coordinate");
        idx[s] = static_cast<std::size_t>(pos - bc.begin());
      }
      base.set(idx[0], idx[1], parse_in(value, base_coords, key));
    }
    m.metric = warped(coords, f, base);
    m.P = unit_vector(n, 0);
    if (defaults) m.expected = BuiltinExpectations{true, true, true, true};
  } else {
    throw Error("unknown builtin '" + name + "'");
  }

  if (auto it = params.find("P"); it != params.end()) {
    const auto items = split_list(it->second);
    if (items.size() != n) {
      throw Error("P needs " + std::to_string(n) + " components, got " +
                  std::to_string(items.size()));
    }
    m.P.components.clear();
    for (const auto& s : items) m.P.components.push_back(parse_in(s, coords, "P"));
  }
  return m;
}

}  // namespace ssmc
