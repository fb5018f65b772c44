#pragma once

#include <span>
#include <string>

namespace dqtsc::cli {

struct ChartLabels {
  std::string title;
  std::string x;
  std::string y;
};

// Self-contained line chart. Output depends only on the arguments.
std::string line_chart_svg(const ChartLabels& labels, std::span<const double> xs,
                           std::span<const double> ys);

}  // namespace dqtsc::cli
