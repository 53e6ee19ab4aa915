#pragma once

#include <string>
#include <vector>

#include "bmetro/report/dataset.hpp"

namespace bmetro::report {

struct PlotSpec {
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_x = true;
  bool log_y = true;
};

/// Line plot of dataset columns. Non-finite and (on log axes) non-positive
/// points break the line; single points are drawn as markers.
std::string render_svg(const Dataset& data, const PlotSpec& spec);

}  // namespace bmetro::report
