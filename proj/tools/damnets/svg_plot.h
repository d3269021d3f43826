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

#ifndef DAMNETS_TOOLS_SVG_PLOT_H_
#define DAMNETS_TOOLS_SVG_PLOT_H_

#include <string>
#include <vector>

namespace damnets::tools {

struct Series {
  std::string label;
  std::string color;  // any SVG colour
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band;  // optional half-width of a shaded band around y
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Self-contained SVG line chart with axes, ticks and a legend.
std::string render_line_chart(const PlotSpec& spec);

}  // namespace damnets::tools

#endif  // DAMNETS_TOOLS_SVG_PLOT_H_
