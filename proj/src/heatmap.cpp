#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ergcftp/experiment.hpp"

namespace ergcftp {

namespace {

// Linear ramp from dark blue through to yellow.
std::string ramp(double t) {
  if (std::isnan(t)) return "#cccccc";
  t = std::clamp(t, 0.0, 1.0);
  const double r0 = 33, g0 = 29, b0 = 99, r1 = 250, g1 = 230, b1 = 50;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(r0 + (r1 - r0) * t), int(g0 + (g1 - g0) * t),
                int(b0 + (b1 - b0) * t));
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_heatmap_svg(std::ostream& os, const std::string& title, const std::string& x_label,
                       const std::vector<double>& xs, const std::string& y_label,
                       const std::vector<double>& ys, const std::vector<double>& values) {
  if (xs.empty() || ys.empty() || values.size() != xs.size() * ys.size())
    throw InvalidArgument("heatmap grid does not match its axes");
  const double cell = std::max(6.0, 440.0 / double(std::max(xs.size(), ys.size())));
  const double left = 70, top = 40;
  const double w = cell * double(xs.size()), h = cell * double(ys.size());
  const double width = left + w + 120, height = top + h + 60;

  double lo = INFINITY, hi = -INFINITY;
  for (double v : values)
    if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  if (!(lo <= hi)) lo = hi = 0;
  const double span = hi > lo ? hi - lo : 1.0;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << escape(title) << "</text>\n";
  // x runs left to right along axis 1; y runs bottom to top along axis 2
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double v = values[i * ys.size() + j];
      os << "<rect x=\"" << left + cell * double(i) << "\" y=\"" << top + h - cell * double(j + 1)
         << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
         << ramp((v - lo) / span) << "\"/>\n";
    }
  }
  os << "<text x=\"" << left << "\" y=\"" << top + h + 16 << "\">" << format_number(xs.front())
     << "</text>\n";
  os << "<text x=\"" << left + w << "\" y=\"" << top + h + 16 << "\" text-anchor=\"end\">"
     << format_number(xs.back()) << "</text>\n";
  os << "<text x=\"" << left + w / 2 << "\" y=\"" << top + h + 36 << "\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + h << "\" text-anchor=\"end\">"
     << format_number(ys.front()) << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">"
     << format_number(ys.back()) << "</text>\n";
  os << "<text x=\"20\" y=\"" << top + h / 2 << "\" transform=\"rotate(-90 20 " << top + h / 2
     << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

  const double lx = left + w + 30;
  for (int k = 0; k < 20; ++k) {
    os << "<rect x=\"" << lx << "\" y=\"" << top + h - (h / 20) * (k + 1) << "\" width=\"20\" height=\""
       << h / 20 << "\" fill=\"" << ramp(k / 19.0) << "\"/>\n";
  }
  os << "<text x=\"" << lx + 26 << "\" y=\"" << top + 10 << "\">" << format_number(hi) << "</text>\n";
  os << "<text x=\"" << lx + 26 << "\" y=\"" << top + h << "\">" << format_number(lo) << "</text>\n";
  os << "</svg>\n";
}

}  // namespace ergcftp
