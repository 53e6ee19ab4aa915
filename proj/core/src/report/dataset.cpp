#include "bmetro/report/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "bmetro/error.hpp"

namespace bmetro::report {

int Dataset::column_index(const std::string& column_name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == column_name) return static_cast<int>(i);
  }
  return -1;
}

void Dataset::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw_invalid("row width does not match the dataset columns");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Dataset& data) {
  std::ostringstream os;
  for (const auto& [key, value] : data.notes) os << "# " << key << ": " << value << "\n";
  for (std::size_t i = 0; i < data.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(data.columns[i].header());
  }
  os << "\n";
  for (const auto& row : data.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (const double* d = std::get_if<double>(&row[i])) {
        os << format_number(*d);
      } else {
        os << csv_escape(std::get<std::string>(row[i]));
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string to_json(const Dataset& data) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["name"] = data.name;
  ordered_json cols = ordered_json::array();
  for (const auto& c : data.columns) cols.push_back(c.header());
  j["columns"] = cols;
  ordered_json rows = ordered_json::array();
  for (const auto& row : data.rows) {
    ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string key = data.columns[i].header();
      if (const double* d = std::get_if<double>(&row[i])) {
        // Same text as the CSV so both files carry identical values.
        if (std::isfinite(*d)) {
          r[key] = ordered_json::parse(format_number(*d));
        } else if (std::isnan(*d)) {
          r[key] = nullptr;
        } else {
          r[key] = format_number(*d);
        }
      } else {
        r[key] = std::get<std::string>(row[i]);
      }
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  ordered_json notes = ordered_json::object();
  for (const auto& [key, value] : data.notes) notes[key] = value;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

}  // namespace bmetro::report
