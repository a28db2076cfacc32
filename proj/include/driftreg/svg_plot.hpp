#pragma once

#include <string>
#include <vector>

namespace driftreg {

struct PlotSeries {
  std::string label;
  std::vector<double> y;  // plotted against x = 1..n
};

struct PlotOptions {
  std::string title;
  std::string x_label = "iteration";
  std::string y_label = "cumulative squared loss";
  bool log_y = false;
  int width = 800;
  int height = 500;
};

// Self-contained SVG line chart with axes, ticks and a legend.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace driftreg
