#include "gengeo/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace gengeo {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Split on delim at parenthesis depth zero, so function arguments survive.
std::vector<std::string> split_top_level(const std::string& s, char delim) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == delim && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct IniData {
  std::string origin;
  std::map<std::string, std::string> kv;  // "section.key" -> value
  std::map<std::string, int> line_of;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  const std::string& get(const std::string& key, const char* why) const {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ConfigError(origin + ": missing '" + key + "' (" + why + ")");
    return it->second;
  }
};

const std::set<std::string> kKnownKeys = {
    "chart.name",  "chart.coords", "chart.domain", "chart.embedding",
    "metric.g",    "metric.ginv",  "endo.J.rows",  "endo.J.builtin",
    "endo.J.row1", "endo.J.col1",
};

IniData parse_ini(const std::string& text, const std::string& origin) {
  IniData data;
  data.origin = origin;
  std::istringstream in(text);
  std::string line, section, last_key;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    bool continuation = !line.empty() && std::isspace(static_cast<unsigned char>(line[0]));
    std::string body = trim(line);
    if (body.empty()) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (continuation) {
      if (last_key.empty()) throw ConfigError(where + ": continuation line without a key");
      data.kv[last_key] += " " + body;
      continue;
    }
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(body.substr(1, body.size() - 2));
      if (section != "chart" && section != "metric" && section != "endo.J")
        throw ConfigError(where + ": unknown section [" + section + "]");
      last_key.clear();
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key before any [section]");
    std::string key = section + "." + trim(body.substr(0, eq));
    if (!kKnownKeys.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (data.kv.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    data.kv[key] = trim(body.substr(eq + 1));
    data.line_of[key] = lineno;
    last_key = key;
  }
  return data;
}

Expr parse_entry(const std::string& text, const std::vector<std::string>& names,
                 const std::string& origin, const std::string& what) {
  try {
    return parse(text, names);
  } catch (const ParseError& e) {
    throw ConfigError(origin + ": in " + what + ", '" + text + "': " + e.raw_message());
  }
}

std::vector<std::vector<Expr>> parse_matrix(const std::string& value,
                                            const std::vector<std::string>& names,
                                            const std::string& origin, const std::string& what) {
  std::vector<std::vector<Expr>> rows;
  for (const std::string& row_text : split_top_level(value, ';')) {
    std::vector<Expr> row;
    for (const std::string& entry : split_top_level(row_text, ','))
      row.push_back(parse_entry(entry, names, origin, what));
    rows.push_back(std::move(row));
  }
  for (const auto& row : rows)
    if (row.size() != rows.front().size())
      throw ConfigError(origin + ": ragged matrix in " + what);
  return rows;
}

double parse_number(const std::string& text, const std::string& origin, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin + ": bad number '" + text + "' in " + what);
  }
}

ChartPtr chart_from_ini(const IniData& ini) {
  std::string name = ini.has("chart.name") ? ini.kv.at("chart.name") : std::string("user");
  std::vector<std::string> coords;
  for (const std::string& c : split_top_level(ini.get("chart.coords", "coordinate names"), ','))
    coords.push_back(c);
  std::vector<Interval> domain;
  for (const std::string& piece :
       split_top_level(ini.get("chart.domain", "one lo..hi range per coordinate"), ',')) {
    auto dots = piece.find("..");
    if (dots == std::string::npos)
      throw ConfigError(ini.origin + ": domain range '" + piece + "' is not 'lo..hi'");
    domain.push_back(Interval{parse_number(trim(piece.substr(0, dots)), ini.origin, "domain"),
                              parse_number(trim(piece.substr(dots + 2)), ini.origin, "domain")});
  }
  std::vector<Expr> embedding;
  if (ini.has("chart.embedding"))
    for (const std::string& comp : split_top_level(ini.kv.at("chart.embedding"), ','))
      embedding.push_back(parse_entry(comp, coords, ini.origin, "embedding"));
  try {
    return make_chart(std::move(name), std::move(coords), std::move(domain),
                      std::move(embedding));
  } catch (const DomainError& e) {
    throw ConfigError(ini.origin + ": " + e.what());
  }
}

std::map<std::string, std::string> parse_params(const std::string& text,
                                                const std::string& spec) {
  std::map<std::string, std::string> out;
  if (text.empty()) return out;
  for (const std::string& piece : split_top_level(text, ',')) {
    auto eq = piece.find('=');
    if (eq == std::string::npos)
      throw ConfigError("structure '" + spec + "': parameter '" + piece + "' is not key=value");
    out[trim(piece.substr(0, eq))] = trim(piece.substr(eq + 1));
  }
  return out;
}

void append_diag_matrix(std::string& out, const char* key,
                        const std::array<const char*, 6>& diag) {
  out += key;
  out += " = ";
  for (int r = 0; r < 6; ++r) {
    if (r > 0) out += "    ";
    for (int c = 0; c < 6; ++c) {
      out += (r == c) ? diag[static_cast<std::size_t>(r)] : "0";
      out += (c < 5) ? ", " : (r < 5 ? ";\n" : "\n");
    }
  }
}

void append_list(std::string& out, const char* key, const char* const* items, int count) {
  out += key;
  out += " = ";
  for (int k = 0; k < count; ++k) {
    out += items[k];
    out += (k + 1 < count) ? ",\n    " : "\n";
  }
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.points <= 0) throw ConfigError("points must be positive");
  if (cfg.directions <= 0) throw ConfigError("directions must be positive");
  if (cfg.tol_vanish <= 0.0 || cfg.tol_nonvanish <= 0.0)
    throw ConfigError("tolerances must be positive");
  if (cfg.tol_vanish >= cfg.tol_nonvanish)
    throw ConfigError("tol-vanish must be below tol-nonvanish");
  if (cfg.structure.empty()) throw ConfigError("structure spec is empty");
  if (cfg.chart.empty()) throw ConfigError("chart spec is empty");
}

LoadedGeometry load_geometry(const std::string& chart_spec) {
  if (chart_spec == "s6") {
    Sphere6 s = make_sphere6();
    LoadedGeometry geo;
    geo.chart = s.chart;
    geo.metric = s.metric;
    geo.j = s.j;
    geo.builtin_s6 = true;
    return geo;
  }
  std::ifstream in(chart_spec);
  if (!in) throw ConfigError("cannot open geometry file '" + chart_spec + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geometry_text(buf.str(), chart_spec);
}

LoadedGeometry parse_geometry_text(const std::string& text, const std::string& origin) {
  IniData ini = parse_ini(text, origin);
  LoadedGeometry geo;
  geo.chart = chart_from_ini(ini);
  const auto& names = geo.chart->coord_names();
  const int n = geo.chart->dim();

  if (ini.has("metric.g")) {
    auto g = parse_matrix(ini.kv.at("metric.g"), names, origin, "metric.g");
    if (static_cast<int>(g.size()) != n)
      throw ConfigError(origin + ": metric.g must be " + std::to_string(n) + "x" +
                        std::to_string(n));
    try {
      if (ini.has("metric.ginv"))
        geo.metric = metric_field(geo.chart, std::move(g),
                                  parse_matrix(ini.kv.at("metric.ginv"), names, origin,
                                               "metric.ginv"));
      else
        geo.metric = metric_field(geo.chart, std::move(g));
    } catch (const DomainError& e) {
      throw ConfigError(origin + ": " + e.what());
    }
  } else if (ini.has("metric.ginv")) {
    throw ConfigError(origin + ": metric.ginv given without metric.g");
  }

  const bool has_rows = ini.has("endo.J.rows");
  const bool has_builtin = ini.has("endo.J.builtin");
  if (has_rows && has_builtin)
    throw ConfigError(origin + ": endo.J.rows and endo.J.builtin are mutually exclusive");
  if (has_rows) {
    auto rows = parse_matrix(ini.kv.at("endo.J.rows"), names, origin, "endo.J.rows");
    if (static_cast<int>(rows.size()) != n || static_cast<int>(rows.front().size()) != n)
      throw ConfigError(origin + ": endo.J.rows must be " + std::to_string(n) + "x" +
                        std::to_string(n));
    geo.j = endo_field(geo.chart, std::move(rows));
  } else if (has_builtin) {
    const std::string& kind = ini.kv.at("endo.J.builtin");
    if (kind != "cross")
      throw ConfigError(origin + ": unknown endo.J.builtin '" + kind + "'");
    if (geo.chart->dim() != 6 || geo.chart->embedding_dim() != 7)
      throw ConfigError(origin + ": endo.J.builtin = cross needs a 6-chart embedded in R^7");
    CrossTable table;
    try {
      table = calibrate_table(geo.chart, calibration_candidates(), 20, 20260819ULL, 1e-8);
    } catch (const DomainError& e) {
      throw ConfigError(origin + ": " + e.what());
    }
    geo.j = build_j(geo.chart, table);
    if (ini.has("endo.J.row1") || ini.has("endo.J.col1")) {
      // Fixture lines in the file double as a consistency check on the load.
      std::vector<Expr> row, col;
      for (const std::string& e :
           split_top_level(ini.get("endo.J.row1", "both fixture lines or neither"), ','))
        row.push_back(parse_entry(e, names, origin, "endo.J.row1"));
      for (const std::string& e :
           split_top_level(ini.get("endo.J.col1", "both fixture lines or neither"), ','))
        col.push_back(parse_entry(e, names, origin, "endo.J.col1"));
      if (static_cast<int>(row.size()) != n || static_cast<int>(col.size()) != n)
        throw ConfigError(origin + ": fixture lines must list " + std::to_string(n) +
                          " entries");
      double worst = 0.0;
      for (const Point& p : sample_chart(*geo.chart, 10, 20260819ULL)) {
        Mat<double> t = eval_mat<double>(*geo.j->comps, std::span<const double>(p));
        for (int k = 0; k < n; ++k) {
          worst = std::max(worst,
                           std::abs(t.at(0, k) - row[static_cast<std::size_t>(k)].eval(p)));
          worst = std::max(worst,
                           std::abs(t.at(k, 0) - col[static_cast<std::size_t>(k)].eval(p)));
        }
      }
      if (worst > 1e-8)
        throw ConfigError(origin + ": calibrated J disagrees with the file's fixture lines");
    }
  }
  return geo;
}

BlockEndo build_structure(const std::string& spec, const LoadedGeometry& geo,
                          std::uint64_t seed) {
  auto colon = spec.find(':');
  std::string head = trim(spec.substr(0, colon));
  auto params = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
  auto need_metric = [&]() -> const MetricField& {
    if (!geo.metric) throw ConfigError("structure '" + head + "' needs a [metric] section");
    return *geo.metric;
  };
  auto need_j = [&]() -> const EndoField& {
    if (!geo.j) throw ConfigError("structure '" + head + "' needs an [endo.J] section");
    return *geo.j;
  };
  auto reject_unknown = [&](std::initializer_list<const char*> known) {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (const char* allow : known) ok = ok || k == allow;
      if (!ok) throw ConfigError("structure '" + head + "': unknown parameter '" + k + "'");
    }
  };

  if (head == "jg") {
    reject_unknown({});
    return make_j_g(need_metric());
  }
  if (head == "jomega") {
    reject_unknown({});
    return make_j_omega(need_metric(), need_j());
  }
  if (head == "jlambda") {
    reject_unknown({"lambda"});
    int lambda = 1;
    if (params.count("lambda")) {
      const std::string& v = params.at("lambda");
      if (v == "1" || v == "+1")
        lambda = 1;
      else if (v == "-1")
        lambda = -1;
      else
        throw ConfigError("structure 'jlambda': lambda must be 1 or -1, got '" + v + "'");
    }
    return make_j_lambda(need_j(), lambda);
  }
  if (head == "spherical") {
    reject_unknown({"a", "b", "c"});
    const auto& names = geo.chart->coord_names();
    auto coeff = [&](const char* key) {
      if (!params.count(key)) return Expr::constant(0.0);
      return parse_entry(params.at(key), names, "structure '" + spec + "'", key);
    };
    Expr a = coeff("a"), b = coeff("b"), c = coeff("c");
    try {
      return spherical_combination(scalar_from_expr(a), scalar_from_expr(b),
                                   scalar_from_expr(c), need_metric(), need_j(),
                                   sample_chart(*geo.chart, 20, seed));
    } catch (const DomainError& e) {
      throw ConfigError("structure '" + spec + "': " + e.what());
    }
  }
  throw ConfigError("unknown structure '" + head +
                    "' (expected jg, jomega, jlambda, spherical)");
}

std::string export_sphere6_config() {
  Sphere6 s = make_sphere6();
  const Sphere6Text& text = sphere6_text();
  const auto& names = s.chart->coord_names();
  std::string out;
  out += "# Round six-sphere in polar coordinates, with the cross-product\n";
  out += "# almost complex structure.  Written by 'gengeo export-s6'.\n\n";
  out += "[chart]\nname = s6\ncoords = ";
  for (std::size_t i = 0; i < names.size(); ++i)
    out += names[i] + (i + 1 < names.size() ? ", " : "\n");
  out += "domain = ";
  char buf[64];
  const auto& dom = s.chart->domain();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g..%.17g", dom[i].lo, dom[i].hi);
    out += buf;
    out += (i + 1 < dom.size()) ? ", " : "\n";
  }
  append_list(out, "embedding", text.embedding.data(), 7);
  out += "\n[metric]\n";
  append_diag_matrix(out, "g", text.metric_diag);
  append_diag_matrix(out, "ginv", text.metric_inv_diag);
  out += "\n[endo.J]\n";
  out += "# J is rebuilt from the 7-dimensional cross product on load; the\n";
  out += "# fixture lines below pin the component convention (" + s.table.variant + ").\n";
  out += "builtin = cross\n";
  append_list(out, "row1", text.j_row.data(), 6);
  append_list(out, "col1", text.j_col.data(), 6);
  return out;
}

}  // namespace gengeo
