// Copyright 2026 The DAMNETS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace damnets::tools {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 55;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (span / step <= 6.0) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return out;
}

}  // namespace

std::string render_line_chart(const PlotSpec& spec) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double b = i < s.band.size() ? s.band[i] : 0.0;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i] - b);
      y_hi = std::max(y_hi, s.y[i] + b);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 0.5;
    y_hi += 0.5;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";

  for (double t : ticks(x_lo, x_hi)) {
    svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : ticks(y_lo, y_hi)) {
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(t)) << "\" x2=\"" << kLeft + pw
        << "\" y2=\"" << num(py(t)) << "\" stroke=\"#e0e0e0\"/>"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(t) + 4)
        << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

  for (const auto& s : spec.series) {
    if (s.x.empty()) continue;
    if (!s.band.empty()) {
      svg << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        svg << num(px(s.x[i])) << ',' << num(py(s.y[i] + s.band[i])) << ' ';
      }
      for (std::size_t i = s.x.size(); i-- > 0;) {
        svg << num(px(s.x[i])) << ',' << num(py(s.y[i] - s.band[i])) << ' ';
      }
      svg << "\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    }
    svg << "\"/>\n";
  }

  double ly = kTop + 14;
  for (const auto& s : spec.series) {
    svg << "<line x1=\"" << kLeft + pw - 130 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << kLeft + pw - 110 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/><text x=\"" << kLeft + pw - 104 << "\" y=\"" << ly << "\">"
        << escape(s.label) << "</text>\n";
    ly += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace damnets::tools
