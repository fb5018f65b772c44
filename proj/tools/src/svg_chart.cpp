#include "dqtsc/cli/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dqtsc::cli {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 80;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr int kTicks = 5;

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

Range range_of(std::span<const double> v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  Range r{*lo, *hi};
  if (r.hi - r.lo < 1e-12) {
    const double pad = std::max(1.0, std::abs(r.lo) * 0.05);
    r.lo -= pad;
    r.hi += pad;
  }
  return r;
}

}  // namespace

std::string line_chart_svg(const ChartLabels& labels, std::span<const double> xs,
                           std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw std::invalid_argument("line_chart_svg: need matching, non-empty series");
  }
  const Range xr = range_of(xs);
  const Range yr = range_of(ys);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
       fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fixed(kWidth / 2, 0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(labels.title) + "</text>\n";

  for (int i = 0; i <= kTicks; ++i) {
    const double f = static_cast<double>(i) / kTicks;
    const double y = yr.lo + f * (yr.hi - yr.lo);
    const double x = xr.lo + f * (xr.hi - xr.lo);
    s += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(py(y)) + "\" x2=\"" +
         fixed(kLeft + pw) + "\" y2=\"" + fixed(py(y)) + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(y) + 4) +
         "\" text-anchor=\"end\">" + tick_label(y) + "</text>\n";
    s += "<text x=\"" + fixed(px(x)) + "\" y=\"" + fixed(kTop + ph + 18) +
         "\" text-anchor=\"middle\">" + tick_label(x) + "</text>\n";
  }
  s += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) +
       "\" height=\"" + fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 16) +
       "\" text-anchor=\"middle\">" + escape(labels.x) + "</text>\n";
  s += "<text transform=\"translate(18," + fixed(kTop + ph / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + escape(labels.y) + "</text>\n";

  s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += fixed(px(xs[i])) + "," + fixed(py(ys[i]));
  }
  s += "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += "<circle cx=\"" + fixed(px(xs[i])) + "\" cy=\"" + fixed(py(ys[i])) +
         "\" r=\"2\" fill=\"#1f77b4\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace dqtsc::cli
