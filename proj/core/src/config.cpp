#include "ssmc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "ssmc/errors.hpp"

namespace ssmc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Item {
  std::string text;
  bool quoted = false;
};

struct Entry {
  std::string key;
  std::vector<Item> items;
  std::size_t line = 0;
};

struct Section {
  std::size_t line = 0;
  std::vector<Entry> entries;
};

// Splits a value on commas outside quotes. A single quoted item that holds
// commas is kept whole here; list readers split it further.
std::vector<Item> split_value(std::string_view v, std::size_t line) {
  std::vector<Item> items;
  std::size_t i = 0;
  while (true) {
    while (i < v.size() && (v[i] == ' ' || v[i] == '\t')) ++i;
    Item item;
    if (i < v.size() && v[i] == '"') {
      const auto close = v.find('"', i + 1);
      if (close == std::string_view::npos) throw ConfigError(line, "unterminated string");
      item.text = std::string(v.substr(i + 1, close - i - 1));
      item.quoted = true;
      i = close + 1;
      while (i < v.size() && (v[i] == ' ' || v[i] == '\t')) ++i;
      if (i < v.size() && v[i] != ',') throw ConfigError(line, "unexpected text after string");
    } else {
      const auto comma = v.find(',', i);
      item.text = trim(v.substr(i, comma == std::string_view::npos ? v.npos : comma - i));
      if (item.text.find('"') != std::string::npos) throw ConfigError(line, "stray quote");
      i = comma == std::string_view::npos ? v.size() : comma;
    }
    items.push_back(std::move(item));
    if (i >= v.size()) break;
    ++i;  // comma
  }
  return items;
}

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (!in_string && line[i] == '#') return std::string(line.substr(0, i));
  }
  return std::string(line);
}

double to_number(const std::string& s, std::size_t line, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(line, key + ": expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& s, std::size_t line, const std::string& key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(line, key + ": expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

/// All list elements, splitting a lone quoted string on commas.
std::vector<Item> list_items(const Entry& e) {
  if (e.items.size() == 1 && e.items[0].quoted &&
      e.items[0].text.find(',') != std::string::npos) {
    std::vector<Item> out;
    std::stringstream ss(e.items[0].text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back({trim(part), true});
    return out;
  }
  return e.items;
}

const Item& single(const Entry& e) {
  if (e.items.size() != 1) throw ConfigError(e.line, e.key + ": expected a single value");
  return e.items[0];
}

std::string scalar(const Entry& e) { return single(e).text; }

Expr expression(const Item& item, const std::vector<std::string>& coords, std::size_t line,
                const std::string& key) {
  if (!item.quoted) throw ConfigError(line, key + ": expressions must be quoted");
  try {
    return parse(item.text, coords);
  } catch (const ParseError& err) {
    throw ConfigError(line, key + ": " + err.what());
  }
}

/// Splits `name[a,b]` into ("name", {"a","b"}); returns false when the key has
/// no index part.
bool indexed(const std::string& key, std::string& base, std::vector<std::string>& idx) {
  const auto open = key.find('[');
  if (open == std::string::npos) return false;
  if (key.back() != ']') return false;
  base = trim(key.substr(0, open));
  idx.clear();
  std::stringstream ss(key.substr(open + 1, key.size() - open - 2));
  std::string part;
  while (std::getline(ss, part, ',')) idx.push_back(trim(part));
  return true;
}

std::size_t coord_index(const std::vector<std::string>& coords, const std::string& name,
                        std::size_t line) {
  auto it = std::find(coords.begin(), coords.end(), name);
  if (it == coords.end()) throw ConfigError(line, "unknown coordinate '" + name + "'");
  return static_cast<std::size_t>(it - coords.begin());
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

using Sections = std::map<std::string, Section>;

Sections read_sections(std::string_view text) {
  static const std::vector<std::string> known{"manifold", "metric",     "vector_field", "sampling",
                                              "fluid",    "tolerances", "report"};
  Sections sections;
  Section* current = nullptr;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "malformed section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError(line, "unknown section [" + name + "]");
      }
      if (sections.contains(name)) throw ConfigError(line, "duplicate section [" + name + "]");
      current = &sections[name];
      current->line = line;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    if (!current) throw ConfigError(line, "key outside of any section");
    Entry e{trim(s.substr(0, eq)), split_value(s.substr(eq + 1), line), line};
    if (e.key.empty()) throw ConfigError(line, "empty key");
    const bool repeatable = e.key == "point";
    for (const Entry& prev : current->entries) {
      if (prev.key == e.key && !repeatable) {
        throw ConfigError(line, "duplicate key '" + e.key + "'");
      }
    }
    current->entries.push_back(std::move(e));
  }
  return sections;
}

const Entry* find(const Sections& s, const std::string& section, const std::string& key) {
  auto it = s.find(section);
  if (it == s.end()) return nullptr;
  for (const Entry& e : it->second.entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

}  // namespace

void set_fluid_param(FluidParams& fp, const std::string& key, const std::string& value,
                     const std::vector<std::string>& coords) {
  auto expr = [&](Expr& slot) {
    try {
      slot = parse(value, coords);
    } catch (const ParseError& e) {
      throw Error("fluid " + key + ": " + e.what());
    }
  };
  auto number = [&]() {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error("fluid " + key + ": expected a number, got '" + value + "'");
    }
    return v;
  };
  if (key == "sigma") {
    expr(fp.sigma);
  } else if (key == "p") {
    expr(fp.p);
  } else if (key == "rho") {
    expr(fp.rho);
  } else if (key == "rho_from_pressure") {
    if (value != "true" && value != "false") {
      throw Error("fluid rho_from_pressure: expected true or false");
    }
    fp.rho_is_pressure = value == "true";
  } else if (key == "lambda") {
    fp.lambda = number();
  } else if (key == "k") {
    fp.k = number();
    if (fp.k <= 0.0) throw Error("fluid k must be positive");
  } else {
    throw Error("unknown fluid parameter '" + key + "'");
  }
}

AnalysisConfig parse_config(std::string_view text) {
  const Sections sec = read_sections(text);
  AnalysisConfig cfg;

  // Every key is checked against the allowed set of its section first.
  auto allow = [&](const std::string& section, std::initializer_list<const char*> plain,
                   std::initializer_list<const char*> indexed_keys) {
    auto it = sec.find(section);
    if (it == sec.end()) return;
    for (const Entry& e : it->second.entries) {
      std::string base;
      std::vector<std::string> idx;
      bool ok = false;
      if (indexed(e.key, base, idx)) {
        for (const char* k : indexed_keys) ok = ok || base == k;
      } else {
        for (const char* k : plain) ok = ok || e.key == k;
      }
      if (!ok) throw ConfigError(e.line, "unknown key '" + e.key + "' in [" + section + "]");
    }
  };
  allow("manifold", {"dimension", "coordinates", "signature"}, {});
  allow("metric", {"builtin", "diag", "f", "gstar"}, {"g", "gstar"});
  allow("vector_field", {"P"}, {"P"});
  allow("sampling", {"points", "seed", "point"}, {"bounds", "singular"});
  allow("fluid", {"sigma", "p", "rho", "rho_from_pressure", "lambda", "k"}, {});
  allow("tolerances", {"residual", "fd_step"}, {});
  allow("report", {"format"}, {});

  // [manifold]
  std::optional<std::size_t> dimension;
  std::size_t dim_line = 0;
  if (const Entry* e = find(sec, "manifold", "dimension")) {
    const auto n = to_unsigned(scalar(*e), e->line, "dimension");
    if (n < 2 || n > 16) throw ConfigError(e->line, "dimension must be in [2, 16]");
    dimension = n;
    dim_line = e->line;
  }
  std::vector<std::string> coords;
  if (const Entry* e = find(sec, "manifold", "coordinates")) {
    for (const Item& it : list_items(*e)) {
      if (it.text.empty()) throw ConfigError(e->line, "empty coordinate name");
      if (std::find(coords.begin(), coords.end(), it.text) != coords.end()) {
        throw ConfigError(e->line, "duplicate coordinate '" + it.text + "'");
      }
      coords.push_back(it.text);
    }
    if (dimension && *dimension != coords.size()) {
      throw ConfigError(e->line, "coordinates: expected " + std::to_string(*dimension) +
                                     " names, got " + std::to_string(coords.size()));
    }
    dim_line = e->line;
  }
  if (const Entry* e = find(sec, "manifold", "signature")) {
    const std::string v = scalar(*e);
    if (v == "lorentzian") {
      cfg.signature = SignatureExpectation::Lorentzian;
    } else if (v == "riemannian") {
      cfg.signature = SignatureExpectation::Riemannian;
    } else if (v == "any") {
      cfg.signature = SignatureExpectation::Any;
    } else {
      throw ConfigError(e->line, "signature must be lorentzian, riemannian or any");
    }
  }

  // [metric]
  if (!sec.contains("metric")) throw ConfigError(1, "missing [metric] section");
  const Section& metric = sec.at("metric");
  const Entry* builtin_entry = find(sec, "metric", "builtin");
  if (builtin_entry) {
    BuiltinParams params;
    if (dimension || !coords.empty()) {
      params["n"] = std::to_string(dimension ? *dimension : coords.size());
    }
    for (const Entry& e : metric.entries) {
      if (&e == builtin_entry) continue;
      std::string base;
      std::vector<std::string> idx;
      if (e.key == "diag" || (indexed(e.key, base, idx) && base == "g")) {
        throw ConfigError(e.line, "'" + e.key + "' cannot be combined with a builtin metric");
      }
      std::vector<std::string> texts;
      for (const Item& it : e.items) texts.push_back(it.text);
      params[e.key] = join(texts);
    }
    if (const Entry* p = find(sec, "vector_field", "P")) {
      std::vector<std::string> texts;
      for (const Item& it : list_items(*p)) texts.push_back(it.text);
      params["P"] = join(texts);
    }
    BuiltinModel model;
    try {
      model = builtin(scalar(*builtin_entry), params);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& err) {
      throw ConfigError(builtin_entry->line, err.what());
    }
    if (!coords.empty() && coords != model.metric.coords()) {
      throw ConfigError(dim_line, "builtin '" + model.name + "' uses coordinates " +
                                      join(model.metric.coords()));
    }
    const SignatureExpectation signature = cfg.signature;
    cfg = config_from_builtin(model);
    cfg.signature = signature;
    if (sec.contains("vector_field")) {
      for (const Entry& e : sec.at("vector_field").entries) {
        if (e.key != "P") throw ConfigError(e.line, "use P = ... with a builtin metric");
      }
    }
  } else {
    for (const Entry& e : metric.entries) {
      if (e.key == "f" || e.key.starts_with("gstar")) {
        throw ConfigError(e.line, "'" + e.key + "' is a builtin parameter; set builtin first");
      }
    }
    if (coords.empty()) {
      if (!dimension) throw ConfigError(sec.contains("manifold") ? sec.at("manifold").line : metric.line,
                                        "dimension or coordinates required");
      coords = catalog_coordinates(*dimension);
    }
    const std::size_t n = coords.size();
    cfg.label = "custom";
    cfg.coords = coords;
    cfg.metric = MetricSpec(coords);
    std::vector<bool> set_diag(n, false);
    if (const Entry* e = find(sec, "metric", "diag")) {
      const auto items = list_items(*e);
      if (items.size() != n) {
        throw ConfigError(e->line, "metric.diag: expected " + std::to_string(n) +
                                       " entries, got " + std::to_string(items.size()));
      }
      for (std::size_t i = 0; i < n; ++i) {
        cfg.metric.set(i, i, expression(items[i], coords, e->line, "metric.diag"));
        set_diag[i] = true;
      }
    }
    for (const Entry& e : metric.entries) {
      std::string base;
      std::vector<std::string> idx;
      if (!indexed(e.key, base, idx) || base != "g") continue;
      if (idx.size() != 2) throw ConfigError(e.line, e.key + ": expected g[a,b]");
      const std::size_t a = coord_index(coords, idx[0], e.line);
      const std::size_t b = coord_index(coords, idx[1], e.line);
      if (a == b && set_diag[a]) throw ConfigError(e.line, e.key + " already set by diag");
      cfg.metric.set(a, b, expression(single(e), coords, e.line, "metric." + e.key));
      if (a == b) set_diag[a] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!set_diag[i]) {
        throw ConfigError(metric.line, "metric component g[" + coords[i] + "," + coords[i] +
                                           "] is not set");
      }
    }

    // [vector_field]
    if (!sec.contains("vector_field")) throw ConfigError(metric.line, "missing [vector_field] section");
    const Section& vf = sec.at("vector_field");
    cfg.P.components.assign(n, Expr::number(0.0));
    if (const Entry* e = find(sec, "vector_field", "P")) {
      const auto items = list_items(*e);
      if (items.size() != n) {
        throw ConfigError(e->line, "vector_field.P: expected " + std::to_string(n) +
                                       " components, got " + std::to_string(items.size()));
      }
      for (std::size_t i = 0; i < n; ++i) {
        cfg.P.components[i] = expression(items[i], coords, e->line, "vector_field.P");
      }
    }
    for (const Entry& e : vf.entries) {
      std::string base;
      std::vector<std::string> idx;
      if (!indexed(e.key, base, idx)) continue;
      if (find(sec, "vector_field", "P")) throw ConfigError(e.line, e.key + " conflicts with P");
      if (idx.size() != 1) throw ConfigError(e.line, e.key + ": expected P[coordinate]");
      cfg.P.components[coord_index(coords, idx[0], e.line)] =
          expression(single(e), coords, e.line, "vector_field." + e.key);
    }
    cfg.sampling.bounds.assign(n, Interval{});
    cfg.sampling.singular.assign(n, {});
  }
  const std::size_t n = cfg.dim();

  // [sampling]
  if (const Entry* e = find(sec, "sampling", "points")) {
    cfg.sampling.count = to_unsigned(scalar(*e), e->line, "points");
    if (cfg.sampling.count == 0) throw ConfigError(e->line, "points must be positive");
  }
  if (const Entry* e = find(sec, "sampling", "seed")) {
    cfg.sampling.seed = to_unsigned(scalar(*e), e->line, "seed");
  }
  if (sec.contains("sampling")) {
    for (const Entry& e : sec.at("sampling").entries) {
      std::string base;
      std::vector<std::string> idx;
      if (e.key == "point") {
        const auto items = list_items(e);
        if (items.size() != n) {
          throw ConfigError(e.line, "point: expected " + std::to_string(n) + " coordinates, got " +
                                        std::to_string(items.size()));
        }
        std::vector<double> p;
        for (const Item& it : items) p.push_back(to_number(it.text, e.line, "point"));
        cfg.sampling.points.push_back(std::move(p));
      } else if (indexed(e.key, base, idx)) {
        if (idx.size() != 1) throw ConfigError(e.line, e.key + ": expected one coordinate");
        const std::size_t c = coord_index(cfg.coords, idx[0], e.line);
        const auto items = list_items(e);
        std::vector<double> vals;
        for (const Item& it : items) vals.push_back(to_number(it.text, e.line, e.key));
        if (base == "bounds") {
          if (vals.size() != 2 || !(vals[0] < vals[1])) {
            throw ConfigError(e.line, e.key + ": expected lo, hi with lo < hi");
          }
          cfg.sampling.bounds[c] = {vals[0], vals[1]};
        } else {
          cfg.sampling.singular[c] = vals;
        }
      }
    }
  }

  // [fluid]
  if (sec.contains("fluid")) {
    FluidParams fp;
    for (const Entry& e : sec.at("fluid").entries) {
      const bool is_expr = e.key == "sigma" || e.key == "p" || e.key == "rho";
      if (is_expr && !single(e).quoted) {
        throw ConfigError(e.line, "fluid." + e.key + ": expressions must be quoted");
      }
      try {
        set_fluid_param(fp, e.key, scalar(e), cfg.coords);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& err) {
        throw ConfigError(e.line, err.what());
      }
    }
    cfg.fluid = fp;
  }

  // [tolerances]
  if (const Entry* e = find(sec, "tolerances", "residual")) {
    cfg.tol = to_number(scalar(*e), e->line, "residual");
    if (cfg.tol <= 0.0) throw ConfigError(e->line, "residual tolerance must be positive");
  }
  if (const Entry* e = find(sec, "tolerances", "fd_step")) {
    cfg.fd_step = to_number(scalar(*e), e->line, "fd_step");
    if (cfg.fd_step <= 0.0) throw ConfigError(e->line, "fd_step must be positive");
  }

  // [report]
  if (const Entry* e = find(sec, "report", "format")) {
    const std::string v = scalar(*e);
    if (v == "text") {
      cfg.format = ReportFormat::Text;
    } else if (v == "machine") {
      cfg.format = ReportFormat::Machine;
    } else {
      throw ConfigError(e->line, "format must be text or machine");
    }
  }
  return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

AnalysisConfig config_from_builtin(const BuiltinModel& model) {
  AnalysisConfig cfg;
  cfg.label = model.name;
  cfg.coords = model.metric.coords();
  cfg.metric = model.metric;
  cfg.P = model.P;
  cfg.expected = model.expected;
  cfg.sampling.bounds = model.bounds;
  cfg.sampling.singular = model.singular;
  return cfg;
}

std::vector<std::vector<double>> sample_points(const SamplingSpec& s, std::size_t n) {
  if (!s.points.empty()) return s.points;
  std::mt19937_64 rng(s.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::vector<double>> out;
  out.reserve(s.count);
  for (std::size_t i = 0; i < s.count; ++i) {
    std::vector<double> p(n);
    for (std::size_t c = 0; c < n; ++c) {
      const Interval b = c < s.bounds.size() ? s.bounds[c] : Interval{};
      const std::vector<double> none;
      const auto& sing = c < s.singular.size() ? s.singular[c] : none;
      int tries = 0;
      while (true) {
        const double v = b.lo + uniform() * (b.hi - b.lo);
        const bool near = std::any_of(sing.begin(), sing.end(), [v](double x) {
          return std::abs(v - x) < kSingularMargin;
        });
        if (!near) {
          p[c] = v;
          break;
        }
        if (++tries > 10000) throw Error("sampling bounds lie entirely near a singular value");
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ssmc
