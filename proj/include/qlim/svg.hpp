#pragma once

#include <string>
#include <vector>

namespace qlim::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 860;
  int height = 520;
};

// Minimal polyline plot, at most two series (these figures are simple
// curves; a charting stack is not warranted). Log axes drop non-positive
// points. Throws std::invalid_argument for more than two series or no
// plottable data.
std::string render_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace qlim::svg
