#include "sds/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sds::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(path + "." + key, "unknown field");
  }
}

const json& require_object(const json& parent, const char* key, const std::string& path) {
  const auto& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number, got " + std::string(v.type_name()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

double required_number(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing required field");
  return number(obj.at(key), path + "." + key);
}

void read_surface(const json& s, RunConfig& cfg) {
  reject_unknown(s, "surface", {"z0", "z1", "omega"});
  cfg.z0 = required_number(s, "z0", "surface");
  cfg.z1 = required_number(s, "z1", "surface");
  if (!s.contains("omega")) throw ConfigError("surface.omega", "missing required field");
  cfg.omega = number_list(s.at("omega"), "surface.omega");
  if (cfg.omega.empty()) throw ConfigError("surface.omega", "needs at least one coefficient");
}

void read_physics(const json& p, RunConfig& cfg) {
  reject_unknown(p, "physics", {"h", "h_list", "alpha", "alpha_over_h3"});
  if (p.contains("h") && p.contains("h_list")) throw ConfigError("physics", "give either h or h_list, not both");
  if (p.contains("h")) cfg.h_list = {number(p.at("h"), "physics.h")};
  if (p.contains("h_list")) {
    cfg.h_list = number_list(p.at("h_list"), "physics.h_list");
    if (cfg.h_list.empty()) throw ConfigError("physics.h_list", "must not be empty");
  }
  if (p.contains("alpha") && p.contains("alpha_over_h3"))
    throw ConfigError("physics", "give exactly one of alpha and alpha_over_h3");
  if (p.contains("alpha")) cfg.alpha = number(p.at("alpha"), "physics.alpha");
  if (p.contains("alpha_over_h3")) cfg.alpha_over_h3 = number(p.at("alpha_over_h3"), "physics.alpha_over_h3");
}

void read_tolerances(const json& t, Tolerances& tol) {
  reject_unknown(t, "solver.tolerances",
                 {"overlap_scale", "cap_fraction", "residual_bound", "grid_points", "oracle_start_fraction",
                  "oracle_end_fraction", "seed_order", "oracle_rel_tol"});
  const std::string p = "solver.tolerances.";
  if (t.contains("overlap_scale")) tol.overlap_scale = number(t.at("overlap_scale"), p + "overlap_scale");
  if (t.contains("cap_fraction")) tol.cap_fraction = number(t.at("cap_fraction"), p + "cap_fraction");
  if (t.contains("residual_bound")) tol.residual_bound = number(t.at("residual_bound"), p + "residual_bound");
  if (t.contains("grid_points")) tol.grid_points = integer(t.at("grid_points"), p + "grid_points");
  if (t.contains("oracle_start_fraction"))
    tol.oracle_start_fraction = number(t.at("oracle_start_fraction"), p + "oracle_start_fraction");
  if (t.contains("oracle_end_fraction"))
    tol.oracle_end_fraction = number(t.at("oracle_end_fraction"), p + "oracle_end_fraction");
  if (t.contains("seed_order")) tol.seed_order = integer(t.at("seed_order"), p + "seed_order");
  if (t.contains("oracle_rel_tol")) tol.oracle_rel_tol = number(t.at("oracle_rel_tol"), p + "oracle_rel_tol");
}

void read_solver(const json& s, RunConfig& cfg) {
  reject_unknown(s, "solver", {"mode", "E_window", "branch_range", "C", "epsilon", "tolerances", "energies"});
  if (s.contains("mode")) {
    const auto& m = s.at("mode");
    if (!m.is_string()) throw ConfigError("solver.mode", "expected \"paper\" or \"derived\"");
    try {
      cfg.mode = parse_mode(m.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("solver.mode", e.what());
    }
  }
  if (s.contains("E_window")) {
    const auto w = number_list(s.at("E_window"), "solver.E_window");
    if (w.size() != 2) throw ConfigError("solver.E_window", "expected [E_min, E_max]");
    cfg.E_min = w[0];
    cfg.E_max = w[1];
  }
  if (s.contains("branch_range")) {
    const auto& b = s.at("branch_range");
    if (!b.is_array() || b.size() != 2) throw ConfigError("solver.branch_range", "expected [k_min, k_max]");
    cfg.branch_range = std::pair{integer(b[0], "solver.branch_range[0]"), integer(b[1], "solver.branch_range[1]")};
  }
  if (s.contains("C")) cfg.C = number(s.at("C"), "solver.C");
  if (s.contains("epsilon")) cfg.epsilon = number(s.at("epsilon"), "solver.epsilon");
  if (s.contains("tolerances")) {
    const auto& t = s.at("tolerances");
    if (!t.is_object()) throw ConfigError("solver.tolerances", "expected an object");
    read_tolerances(t, cfg.tolerances);
  }
  if (s.contains("energies")) cfg.energies = number_list(s.at("energies"), "solver.energies");
}

void read_output(const json& o, RunConfig& cfg) {
  reject_unknown(o, "output", {"format", "path"});
  if (o.contains("format")) {
    const auto& f = o.at("format");
    if (f == "csv") cfg.format = OutputFormat::csv;
    else if (f == "json") cfg.format = OutputFormat::json;
    else throw ConfigError("output.format", "expected \"csv\" or \"json\"");
  }
  if (o.contains("path")) {
    if (!o.at("path").is_string()) throw ConfigError("output.path", "expected a string");
    cfg.output_path = o.at("path").get<std::string>();
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "invalid JSON");
  }
  if (!doc.is_object()) throw ConfigError("(root)", "expected a JSON object");
  reject_unknown(doc, "(root)", {"surface", "physics", "solver", "output"});

  RunConfig cfg;
  if (doc.contains("surface")) read_surface(require_object(doc, "surface", "surface"), cfg);
  if (doc.contains("physics")) read_physics(require_object(doc, "physics", "physics"), cfg);
  if (doc.contains("solver")) read_solver(require_object(doc, "solver", "solver"), cfg);
  if (doc.contains("output")) read_output(require_object(doc, "output", "output"), cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("--window", "expected E_MIN:E_MAX");
  auto parse = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("--window", "bad number '" + std::string(s) + "'");
    return v;
  };
  const std::string_view sv(text);
  return {parse(sv.substr(0, colon)), parse(sv.substr(colon + 1))};
}

SurfaceProfile RunConfig::profile() const { return SurfaceProfile(z0, z1, ProfilePolynomial(omega)); }

double RunConfig::alpha_at(double h) const {
  if (alpha) return *alpha;
  if (alpha_over_h3) return *alpha_over_h3 * h * h * h;
  return 0.0;
}

SpectralParams RunConfig::params_at(double h) const { return SpectralParams{h, alpha_at(h), 0, E_min, E_max}; }

GlueOptions RunConfig::glue_options() const {
  GlueOptions o;
  o.overlap_scale = tolerances.overlap_scale;
  o.cap_fraction = tolerances.cap_fraction;
  o.residual_bound = tolerances.residual_bound;
  o.grid_points = tolerances.grid_points;
  return o;
}

OracleOptions RunConfig::oracle_options() const {
  OracleOptions o;
  o.start_fraction = tolerances.oracle_start_fraction;
  o.end_fraction = tolerances.oracle_end_fraction;
  o.seed_order = tolerances.seed_order;
  o.rel_tol = tolerances.oracle_rel_tol;
  o.threads = threads;
  return o;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["surface"] = {{"z0", z0}, {"z1", z1}, {"omega", omega}};
  nlohmann::ordered_json phys;
  if (h_list.size() == 1) phys["h"] = h_list.front();
  else phys["h_list"] = h_list;
  if (alpha) phys["alpha"] = *alpha;
  if (alpha_over_h3) phys["alpha_over_h3"] = *alpha_over_h3;
  j["physics"] = phys;
  nlohmann::ordered_json solver;
  solver["mode"] = to_string(mode);
  solver["E_window"] = {E_min, E_max};
  if (branch_range) solver["branch_range"] = {branch_range->first, branch_range->second};
  solver["C"] = C;
  solver["epsilon"] = epsilon;
  solver["tolerances"] = {{"overlap_scale", tolerances.overlap_scale},
                          {"cap_fraction", tolerances.cap_fraction},
                          {"residual_bound", tolerances.residual_bound},
                          {"grid_points", tolerances.grid_points},
                          {"oracle_start_fraction", tolerances.oracle_start_fraction},
                          {"oracle_end_fraction", tolerances.oracle_end_fraction},
                          {"seed_order", tolerances.seed_order},
                          {"oracle_rel_tol", tolerances.oracle_rel_tol}};
  solver["energies"] = energies;
  j["solver"] = solver;
  j["output"] = {{"format", format == OutputFormat::csv ? "csv" : "json"}, {"path", output_path}};
  return j;
}

}  // namespace sds::cli
