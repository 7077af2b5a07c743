#include "sds/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "sds/action.hpp"
#include "sds/errors.hpp"
#include "sds/localfield.hpp"
#include "sds/oracle.hpp"
#include "sds/quantize.hpp"

#ifndef SDS_VERSION
#define SDS_VERSION "unknown"
#endif

namespace sds::cli {

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::ordered_json base_meta(const RunConfig& cfg, const std::string& command) {
  nlohmann::ordered_json meta;
  meta["tool"] = "sds";
  meta["version"] = SDS_VERSION;
  meta["command"] = command;
  meta["config"] = cfg.to_json();
  return meta;
}

SurfaceProfile checked_profile(const RunConfig& cfg) {
  const auto profile = cfg.profile();
  const auto report = validate_profile(profile);
  if (!report.passed) {
    std::string msg = "surface violates the profile assumptions";
    for (const auto& m : report.messages) msg += "; " + m;
    throw DomainError(msg);
  }
  return profile;
}

// Spacing between neighbouring roots near E, in energy.
double root_spacing(double h, double E, double meridian) { return kPi * h * std::sqrt(2.0 * E) / meridian; }

std::vector<SpectralEntry> solve_spectrum(const SurfaceProfile& profile, const RunConfig& cfg, double h) {
  const auto series = enumerate_spectrum(profile, cfg.params_at(h), cfg.mode);
  std::vector<SpectralEntry> out;
  for (const auto& e : series.entries) {
    if (cfg.branch_range && (e.k < cfg.branch_range->first || e.k > cfg.branch_range->second)) continue;
    out.push_back(e);
  }
  return out;
}

// Oracle roots over the window padded by one root spacing on each side, so
// semiclassical roots close to the edges still find their partner.
std::vector<OracleEigenvalue> padded_oracle(const SurfaceProfile& profile, const RunConfig& cfg, double h) {
  auto params = cfg.params_at(h);
  const double Lm = meridian_length(profile);
  params.E_min = std::max(0.5 * params.E_min, params.E_min - root_spacing(h, params.E_min, Lm));
  params.E_max = params.E_max + root_spacing(h, params.E_max, Lm);
  return oracle_spectrum(profile, params, cfg.oracle_options());
}

void warn_fit_window(const SurfaceProfile& profile, const RunConfig& cfg, double h, std::vector<std::string>& notes) {
  const auto opt = cfg.oracle_options();
  const double d_top =
      distance_from_pole_offset(profile, Pole::left, opt.fit_span * opt.end_fraction * profile.length());
  const double kd = std::sqrt(2.0 * cfg.E_max) / h * d_top;
  if (kd > 0.2)
    notes.push_back("warning: oracle fit window reaches k*d = " + format_double(kd) + " at h = " +
                    format_double(h) + "; lower solver.tolerances.oracle_end_fraction");
}

struct Compared {
  double h;
  std::vector<SpectralEntry> sc;
  std::vector<OracleEigenvalue> oracle;
  Pairing pairing;
};

Compared compare_at(const SurfaceProfile& profile, const RunConfig& cfg, double h, std::vector<std::string>& notes) {
  warn_fit_window(profile, cfg, h, notes);
  Compared c{h, solve_spectrum(profile, cfg, h), padded_oracle(profile, cfg, h), {}};
  std::vector<double> e_sc, e_or;
  for (const auto& e : c.sc) e_sc.push_back(e.E);
  for (const auto& o : c.oracle) e_or.push_back(o.E);
  const double Lm = meridian_length(profile);
  c.pairing = pair_nearest(e_sc, e_or, [&](double E) { return 0.5 * root_spacing(h, E, Lm); });
  return c;
}

void report_unmatched(const Compared& c, const RunConfig& cfg, nlohmann::ordered_json& unmatched,
                      std::vector<std::string>& notes) {
  for (auto i : c.pairing.unmatched_sc) {
    unmatched.push_back({{"h", c.h}, {"source", "semiclassical"}, {"k", c.sc[i].k}, {"E", c.sc[i].E}});
    notes.push_back("unmatched semiclassical root: h = " + format_double(c.h) + ", E = " + format_double(c.sc[i].E));
  }
  for (auto j : c.pairing.unmatched_oracle) {
    const double E = c.oracle[j].E;
    if (E < cfg.E_min || E > cfg.E_max) continue;  // padding only
    unmatched.push_back({{"h", c.h}, {"source", "oracle"}, {"E", E}});
    notes.push_back("unmatched oracle root: h = " + format_double(c.h) + ", E = " + format_double(E));
  }
}

}  // namespace

CommandResult cmd_validate(const RunConfig& cfg) {
  CommandResult r;
  const auto report = validate_profile(cfg.profile());
  r.table.columns = {"check", "value"};
  r.table.meta = base_meta(cfg, "validate");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.table.add_row({std::string("passed"), std::string(report.passed ? "true" : "false")});
  r.table.add_row({std::string("ordered"), std::string(report.ordered ? "true" : "false")});
  r.table.add_row({std::string("min_omega"), report.min_omega});
  r.table.add_row({std::string("argmin_omega"), report.argmin_omega});
  r.table.add_row({std::string("min_f_interior"), report.min_f_interior});
  r.table.add_row({std::string("violation_at"), report.violation_at.value_or(nan)});
  for (const auto& m : report.messages) {
    r.table.add_row({std::string("message"), m});
    r.notes.push_back(m);
  }
  r.exit_code = report.passed ? exit_ok : exit_assumption;
  return r;
}

CommandResult cmd_action(const RunConfig& cfg) {
  const auto profile = checked_profile(cfg);
  CommandResult r;
  r.table.columns = {"E", "J", "dJ_dE", "quadrature_error"};
  r.table.meta = base_meta(cfg, "action");
  r.table.meta["meridian_length"] = meridian_length(profile);
  if (cfg.energies.empty()) throw EmptyRequest("no energies requested (solver.energies)");
  for (double E : cfg.energies) {
    const auto a = half_action(profile, E);
    r.table.add_row({E, a.J, action_energy_derivative(profile, E), a.quadrature_error_estimate});
  }
  return r;
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const auto profile = checked_profile(cfg);
  CommandResult r;
  r.table.columns = {"h", "k", "phase_index", "E", "mode", "regime", "phase", "residual"};
  r.table.meta = base_meta(cfg, "spectrum");
  auto regimes = nlohmann::ordered_json::array();
  for (double h : cfg.h_list) {
    const auto params = cfg.params_at(h);
    const auto regime = classify_regime(params, cfg.C, cfg.epsilon);
    regimes.push_back({{"h", h},
                       {"alpha_over_h3", params.alpha_over_h3()},
                       {"regime", to_string(regime.tag)},
                       {"lower", regime.lower},
                       {"upper", regime.upper},
                       {"paper_offset", regime.paper_offset},
                       {"derived_offset", regime.derived_offset},
                       {"paper_index", regime.paper_index},
                       {"derived_index", regime.derived_index}});
    for (const auto& e : solve_spectrum(profile, cfg, h))
      r.table.add_row({h, static_cast<long long>(e.k), static_cast<long long>(e.phase_index), e.E,
                       to_string(e.mode), to_string(regime.tag), e.phase, e.residual});
  }
  r.table.meta["regimes"] = regimes;
  if (r.table.rows.empty()) throw EmptyRequest("no quantization roots in the energy window");
  return r;
}

CommandResult cmd_oracle(const RunConfig& cfg) {
  const auto profile = checked_profile(cfg);
  CommandResult r;
  r.table.columns = {"h", "k", "E", "mismatch_slope", "E_lo", "E_hi"};
  r.table.meta = base_meta(cfg, "oracle");
  for (double h : cfg.h_list) {
    warn_fit_window(profile, cfg, h, r.notes);
    const auto roots = oracle_spectrum(profile, cfg.params_at(h), cfg.oracle_options());
    long long k = 0;
    for (const auto& o : roots) r.table.add_row({h, k++, o.E, o.mismatch_slope, o.E_lo, o.E_hi});
  }
  if (r.table.rows.empty()) throw EmptyRequest("no oracle eigenvalues in the energy window");
  return r;
}

CommandResult cmd_compare(const RunConfig& cfg) {
  const auto profile = checked_profile(cfg);
  CommandResult r;
  r.table.columns = {"h", "k", "E_oracle", "E_semiclassical", "abs_err", "err_over_h"};
  r.table.meta = base_meta(cfg, "compare");
  auto unmatched = nlohmann::ordered_json::array();
  for (double h : cfg.h_list) {
    const auto c = compare_at(profile, cfg, h, r.notes);
    for (const auto& m : c.pairing.matches) {
      const double Eo = c.oracle[m.oracle].E;
      const double Es = c.sc[m.sc].E;
      const double err = std::abs(Es - Eo);
      r.table.add_row({h, static_cast<long long>(c.sc[m.sc].k), Eo, Es, err, err / h});
    }
    report_unmatched(c, cfg, unmatched, r.notes);
  }
  r.table.meta["unmatched"] = unmatched;
  if (r.table.rows.empty()) throw EmptyRequest("no matched roots in the energy window");
  return r;
}

CommandResult cmd_eigenfunction(const RunConfig& cfg) {
  const auto profile = checked_profile(cfg);
  if (!cfg.eigen_k) throw ConfigError("--k", "eigenfunction needs the branch ordinal --k");
  const double h = cfg.h_list.front();
  const auto entries = solve_spectrum(profile, cfg, h);
  const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.k == *cfg.eigen_k; });
  if (it == entries.end())
    throw EmptyRequest("branch k = " + std::to_string(*cfg.eigen_k) + " is not among the " +
                       std::to_string(entries.size()) + " roots in the window");
  const auto params = cfg.params_at(h);
  const auto g = glue(profile, params, it->E, cfg.mode, cfg.glue_options());

  CommandResult r;
  r.table.columns = {"z", "value", "branch_tag"};
  r.table.csv_meta_header = true;
  auto& meta = r.table.meta;
  meta = base_meta(cfg, "eigenfunction");
  meta["h"] = h;
  meta["alpha"] = params.alpha;
  meta["k"] = it->k;
  meta["E"] = it->E;
  meta["mode"] = to_string(cfg.mode);
  meta["cut_inner"] = g.cut_inner;
  meta["cut_outer"] = g.cut_outer;
  meta["d_inner"] = g.d_inner;
  meta["cap"] = g.cap;
  meta["outer_scale"] = g.outer_scale;
  meta["matching_residual"] = g.matching_residual;
  meta["warning"] = g.warning;
  if (g.warning)
    r.notes.push_back("warning: matching residual " + format_double(g.matching_residual) + " exceeds the bound " +
                      format_double(cfg.tolerances.residual_bound));
  for (std::size_t i = 0; i < g.grid.size(); ++i) r.table.add_row({g.grid[i], g.values[i], to_string(g.tags[i])});
  return r;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  const auto profile = checked_profile(cfg);
  if (!std::is_sorted(cfg.h_list.begin(), cfg.h_list.end(), std::greater<>()))
    throw DomainError("sweep needs physics.h_list sorted in descending order");
  CommandResult r;
  r.table.columns = {"h", "k", "E_sc", "E_oracle", "err", "err_over_h", "matching_residual", "radial_residual"};
  r.table.meta = base_meta(cfg, "sweep");
  auto unmatched = nlohmann::ordered_json::array();
  for (double h : cfg.h_list) {
    const auto c = compare_at(profile, cfg, h, r.notes);
    const auto params = cfg.params_at(h);
    for (const auto& m : c.pairing.matches) {
      const auto& e = c.sc[m.sc];
      const double Eo = c.oracle[m.oracle].E;
      const auto g = glue(profile, params, e.E, cfg.mode, cfg.glue_options());
      double rr = std::numeric_limits<double>::quiet_NaN();
      try {
        rr = radial_residual(profile, params, e.E, g);
      } catch (const ResolutionError& ex) {
        r.notes.push_back(std::string("radial residual skipped: ") + ex.what());
      }
      const double err = std::abs(e.E - Eo);
      r.table.add_row({h, static_cast<long long>(e.k), e.E, Eo, err, err / h, g.matching_residual, rr});
    }
    report_unmatched(c, cfg, unmatched, r.notes);
  }
  r.table.meta["unmatched"] = unmatched;
  if (r.table.rows.empty()) throw EmptyRequest("no matched roots in the energy window");
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiclassical spectra of a point interaction on a surface of revolution", "sds"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  std::string config_path, mode, window, out_path, format;
  std::optional<double> h, alpha, alpha_over_h3;
  std::optional<int> k;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--mode", mode, "quantization condition: paper|derived")->check(CLI::IsMember({"paper", "derived"}));
  app.add_option("--h", h, "semiclassical parameter");
  app.add_option("--alpha", alpha, "delta coupling");
  app.add_option("--alpha-over-h3", alpha_over_h3, "delta coupling in units of h^3");
  app.add_option("--window", window, "energy window E_MIN:E_MAX");
  app.add_option("--out", out_path, "output path ('-' for stdout)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--k", k, "branch ordinal for eigenfunction");

  using Command = CommandResult (*)(const RunConfig&);
  const std::vector<std::pair<std::string, Command>> commands = {
      {"validate", cmd_validate}, {"action", cmd_action},   {"spectrum", cmd_spectrum},
      {"oracle", cmd_oracle},     {"compare", cmd_compare}, {"eigenfunction", cmd_eigenfunction},
      {"sweep", cmd_sweep}};
  const std::vector<std::string> help = {"check the profile assumptions",
                                         "half action J(E) for solver.energies",
                                         "roots of the quantization condition",
                                         "shooting eigenvalues",
                                         "semiclassical roots paired with shooting eigenvalues",
                                         "glued eigenfunction samples for branch --k",
                                         "convergence table over physics.h_list"};
  for (std::size_t i = 0; i < commands.size(); ++i) app.add_subcommand(commands[i].first, help[i])->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "sds: " << e.what() << '\n';
    return exit_config;
  }

  std::string name;
  for (const auto& [n, fn] : commands) {
    (void)fn;
    if (app.got_subcommand(n)) name = n;
  }
  const auto cmd = std::find_if(commands.begin(), commands.end(), [&](const auto& c) { return c.first == name; });

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!mode.empty()) cfg.mode = parse_mode(mode);
    if (h) cfg.h_list = {*h};
    if (alpha && alpha_over_h3) throw ConfigError("--alpha", "give exactly one of --alpha and --alpha-over-h3");
    if (alpha) {
      cfg.alpha = *alpha;
      cfg.alpha_over_h3.reset();
    }
    if (alpha_over_h3) {
      cfg.alpha_over_h3 = *alpha_over_h3;
      cfg.alpha.reset();
    }
    if (!window.empty()) std::tie(cfg.E_min, cfg.E_max) = parse_window(window);
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!format.empty()) cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (k) cfg.eigen_k = *k;
    if (const char* t = std::getenv("SDS_THREADS")) {
      char* end = nullptr;
      const long n = std::strtol(t, &end, 10);
      if (end == t || *end != '\0' || n < 1) throw ConfigError("SDS_THREADS", "expected a positive integer");
      cfg.threads = static_cast<int>(n);
    }
  } catch (const ConfigError& e) {
    err << "sds: config error at " << e.what() << '\n';
    return exit_config;
  }

  CommandResult result;
  try {
    result = cmd->second(cfg);
  } catch (const ConfigError& e) {
    err << "sds: config error at " << e.what() << '\n';
    return exit_config;
  } catch (const EmptyRequest& e) {
    err << "sds: " << e.what() << '\n';
    return exit_empty;
  } catch (const OracleError& e) {
    err << "sds: oracle failure at E = " << format_double(e.energy()) << ": " << e.what() << '\n';
    return exit_oracle;
  } catch (const NumericalError& e) {
    err << "sds: numerical failure: " << e.what() << '\n';
    return exit_oracle;
  } catch (const std::domain_error& e) {
    err << "sds: assumption violated: " << e.what() << '\n';
    return exit_assumption;
  } catch (const std::invalid_argument& e) {
    err << "sds: invalid input: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "sds: unexpected failure: " << e.what() << '\n';
    return exit_oracle;
  }

  for (const auto& n : result.notes) err << "sds: " << n << '\n';
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write_table(result.table, cfg.format, out);
  } else {
    std::ofstream file(cfg.output_path);
    if (!file) {
      err << "sds: cannot open output file " << cfg.output_path << '\n';
      return exit_config;
    }
    write_table(result.table, cfg.format, file);
  }
  return result.exit_code;
}

}  // namespace sds::cli
