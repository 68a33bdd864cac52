#pragma once

#include <string>
#include <vector>

namespace tdesign::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // non-positive and non-finite values are skipped
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 420;
};

/// Standalone SVG document: axes, log10 y-scale, one polyline with point
/// markers per series, legend. Throws InvalidArgument if x and y sizes differ.
std::string log_chart(const std::vector<Series>& series, const ChartOptions& options);

}  // namespace tdesign::svg
