#include "tdesign/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tdesign/error.hpp"

namespace tdesign::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

bool plottable(double x, double y) { return std::isfinite(x) && std::isfinite(y) && y > 0.0; }

}  // namespace

std::string log_chart(const std::vector<Series>& series, const ChartOptions& opt) {
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("series '" + s.label + "' has mismatched x/y");
  }
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!plottable(s.x[i], s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double ly = std::log10(s.y[i]);
      ymin = std::min(ymin, ly);
      ymax = std::max(ymax, ly);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  int dec_lo = static_cast<int>(std::floor(ymin));
  int dec_hi = static_cast<int>(std::ceil(ymax));
  if (dec_hi == dec_lo) ++dec_hi;

  const double left = 80, right = 150, top = 40, bottom = 55;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double ly) { return top + (dec_hi - ly) / (dec_hi - dec_lo) * ph; };

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
     << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!opt.title.empty()) {
    os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(opt.title) << "</text>\n";
  }

  // decade gridlines and labels
  const int step = std::max(1, (dec_hi - dec_lo) / 10);
  for (int d = dec_lo; d <= dec_hi; d += step) {
    const double y = py(d);
    os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
       << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d
       << "</text>\n";
  }
  // integer x ticks when the range is small, otherwise five ticks
  std::vector<double> xt;
  if (xmax - xmin <= 20 && std::floor(xmin) == xmin) {
    for (double x = xmin; x <= xmax + 1e-9; x += 1.0) xt.push_back(x);
  } else {
    for (int i = 0; i <= 4; ++i) xt.push_back(xmin + (xmax - xmin) * i / 4.0);
  }
  for (const double x : xt) {
    os << "<line x1=\"" << px(x) << "\" y1=\"" << top + ph << "\" x2=\"" << px(x) << "\" y2=\""
       << top + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << x
       << "</text>\n";
  }
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!opt.x_label.empty()) {
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << opt.height - 12
       << "\" text-anchor=\"middle\">" << escape(opt.x_label) << "</text>\n";
  }
  if (!opt.y_label.empty()) {
    os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << top + ph / 2 << ")\">" << escape(opt.y_label) << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    std::ostringstream pts;
    pts.precision(6);
    std::ostringstream marks;
    marks.precision(6);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!plottable(s.x[i], s.y[i])) continue;
      const double x = px(s.x[i]);
      const double y = py(std::log10(s.y[i]));
      pts << x << ',' << y << ' ';
      marks << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
       << pts.str() << "\"/>\n"
       << marks.str();
    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32
       << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly + 4 << "\">" << escape(s.label)
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace tdesign::svg
