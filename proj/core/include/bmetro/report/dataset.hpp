#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bmetro::report {

/// A cell is a number (NaN means "not available") or a text label.
using Cell = std::variant<double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // rendered as name[unit] in headers; empty for labels
  std::string header() const { return unit.empty() ? name : name + "[" + unit + "]"; }
};

/// Rectangular table shared by the CSV, JSON and SVG writers.
struct Dataset {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> notes;

  int column_index(const std::string& column_name) const;  // -1 when absent
  void add_row(std::vector<Cell> row);
  void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }
};

/// Deterministic number formatting (%.10g; NaN -> "", +-inf -> "inf"/"-inf").
std::string format_number(double v);

std::string to_csv(const Dataset& data);
std::string to_json(const Dataset& data);

}  // namespace bmetro::report
