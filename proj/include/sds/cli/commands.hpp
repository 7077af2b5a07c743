#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sds/cli/config.hpp"
#include "sds/cli/output.hpp"

namespace sds::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 1,
  exit_assumption = 2,
  exit_empty = 3,
  exit_oracle = 4,
};

/// Request produced no rows (empty window, k outside the solved range).
class EmptyRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  Table table;
  int exit_code = exit_ok;
  std::vector<std::string> notes;  ///< human-readable diagnostics for stderr
};

CommandResult cmd_validate(const RunConfig& cfg);
CommandResult cmd_action(const RunConfig& cfg);
CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_oracle(const RunConfig& cfg);
CommandResult cmd_compare(const RunConfig& cfg);
CommandResult cmd_eigenfunction(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);

struct Pairing {
  struct Match {
    std::size_t sc;
    std::size_t oracle;
  };
  std::vector<Match> matches;
  std::vector<std::size_t> unmatched_sc;
  std::vector<std::size_t> unmatched_oracle;
};

/// Mutual nearest-neighbour pairing; pairs farther apart than `max_gap(E)` are rejected.
template <class Gap>
Pairing pair_nearest(const std::vector<double>& sc, const std::vector<double>& oracle, Gap&& max_gap);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

template <class Gap>
Pairing pair_nearest(const std::vector<double>& sc, const std::vector<double>& oracle, Gap&& max_gap) {
  auto nearest = [](const std::vector<double>& pool, double x) {
    std::size_t best = pool.size();
    double dist = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double d = std::abs(pool[i] - x);
      if (best == pool.size() || d < dist) {
        best = i;
        dist = d;
      }
    }
    return best;
  };
  Pairing p;
  std::vector<bool> used(oracle.size(), false);
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const std::size_t j = nearest(oracle, sc[i]);
    if (j < oracle.size() && nearest(sc, oracle[j]) == i && std::abs(oracle[j] - sc[i]) <= max_gap(sc[i])) {
      p.matches.push_back({i, j});
      used[j] = true;
    } else {
      p.unmatched_sc.push_back(i);
    }
  }
  for (std::size_t j = 0; j < oracle.size(); ++j)
    if (!used[j]) p.unmatched_oracle.push_back(j);
  return p;
}

}  // namespace sds::cli
