#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sds/localfield.hpp"
#include "sds/oracle.hpp"
#include "sds/quantize.hpp"
#include "sds/surface.hpp"

namespace sds::cli {

/// Malformed configuration (exit code 1). `where` names the field or the
/// line/column of a JSON syntax error.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class OutputFormat { csv, json };

struct Tolerances {
  double overlap_scale = 0.5;
  double cap_fraction = 5e-3;
  double residual_bound = 0.05;
  int grid_points = 0;
  double oracle_start_fraction = 1e-3;
  double oracle_end_fraction = 1e-6;
  int seed_order = 12;
  double oracle_rel_tol = 1e-12;
};

struct RunConfig {
  double z0 = -1.0;
  double z1 = 1.0;
  std::vector<double> omega{1.0};

  std::vector<double> h_list{0.1};
  std::optional<double> alpha;
  std::optional<double> alpha_over_h3;

  QuantizationMode mode = QuantizationMode::derived;
  double E_min = 0.1;
  double E_max = 1.0;
  std::optional<std::pair<int, int>> branch_range;
  double C = 1.0;
  double epsilon = 0.1;
  Tolerances tolerances;
  std::vector<double> energies{0.25, 0.5, 1.0};

  OutputFormat format = OutputFormat::csv;
  std::string output_path = "-";

  int threads = 1;
  std::optional<int> eigen_k;

  SurfaceProfile profile() const;
  /// alpha at the given h, from whichever of alpha / alpha_over_h3 is set (0 if neither).
  double alpha_at(double h) const;
  SpectralParams params_at(double h) const;
  GlueOptions glue_options() const;
  OracleOptions oracle_options() const;
  nlohmann::ordered_json to_json() const;
};

/// Parses a JSON document into a config, starting from the defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::pair<double, double> parse_window(const std::string& text);

}  // namespace sds::cli
