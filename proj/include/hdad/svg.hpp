#pragma once

#include <optional>
#include <string>

#include "hdad/dataset.hpp"

namespace hdad {

struct PlotOptions {
  std::string x_column;
  std::string y_column;
  std::optional<std::string> class_column;  // default: first categorical column, if any
  std::vector<int> highlight_ids;           // 1-based case ids drawn enlarged
  int width = 800;
  int height = 600;
  std::string title;
};

// Renders a 2-D scatter of two numeric columns as standalone SVG 1.1.
// Points are coloured by class when a categorical column is available;
// highlighted cases get a larger ringed marker.
std::string render_scatter_svg(const Dataset& ds, const PlotOptions& opts);

}  // namespace hdad
