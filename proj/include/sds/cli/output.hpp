#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sds/cli/config.hpp"

namespace sds::cli {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  /// Emit meta as a leading "# {json}" line in CSV output.
  bool csv_meta_header = false;

  void add_row(std::vector<Cell> row);
};

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, OutputFormat format, std::ostream& out);

}  // namespace sds::cli
