// util/svg.cc

// Copyright 2026  xltts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "util/svg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "util/csv.h"
#include "util/io.h"

namespace xltts {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

constexpr double kWidth = 760, kHeight = 420;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

void RangeOf(const std::vector<double>& ys, double* lo, double* hi) {
  for (double y : ys) {
    *lo = std::min(*lo, y);
    *hi = std::max(*hi, y);
  }
}

}  // namespace

void WriteSvgLinePlot(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series) {
  double lo = 1e300, hi = -1e300;
  size_t max_n = 0;
  for (const auto& s : series) {
    RangeOf(s.y, &lo, &hi);
    max_n = std::max(max_n, s.y.size());
  }
  XLTTS_CHECK(max_n >= 2, "line plot needs at least 2 points: " << path);
  if (hi - lo < 1e-12) {
    hi += 1.0;
    lo -= 1.0;
  }
  double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
     << "' height='" << kHeight << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
     << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";
  os << "<line x1='" << kLeft << "' y1='" << kTop << "' x2='" << kLeft
     << "' y2='" << kHeight - kBottom << "' stroke='black'/>\n";
  os << "<line x1='" << kLeft << "' y1='" << kHeight - kBottom << "' x2='"
     << kWidth - kRight << "' y2='" << kHeight - kBottom
     << "' stroke='black'/>\n";
  for (int g = 0; g <= 4; ++g) {
    double val = lo + (hi - lo) * g / 4.0;
    double y = kHeight - kBottom - plot_h * g / 4.0;
    os << "<text x='" << kLeft - 6 << "' y='" << y + 4
       << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
       << CsvWriter::Num(val) << "</text>\n";
    os << "<line x1='" << kLeft << "' y1='" << y << "' x2='" << kWidth - kRight
       << "' y2='" << y << "' stroke='#dddddd'/>\n";
  }
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.y.size() < 2) continue;
    os << "<polyline fill='none' stroke='" << kPalette[si % 8]
       << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < s.y.size(); ++i) {
      double x = kLeft + plot_w * static_cast<double>(i) /
                             static_cast<double>(s.y.size() - 1);
      double y = kHeight - kBottom - plot_h * (s.y[i] - lo) / (hi - lo);
      os << x << ',' << y << ' ';
    }
    os << "'/>\n";
    os << "<text x='" << kWidth - kRight - 4 << "' y='"
       << kTop + 16 * (si + 1) << "' text-anchor='end' fill='"
       << kPalette[si % 8] << "' font-family='sans-serif' font-size='12'>"
       << s.label << "</text>\n";
  }
  os << "</svg>\n";
  WriteWholeFile(path, os.str());
}

void WriteSvgBarChart(const std::string& path, const std::string& title,
                      const std::vector<std::string>& series_names,
                      const std::vector<SvgBarGroup>& groups) {
  XLTTS_CHECK(!groups.empty(), "bar chart needs groups: " << path);
  double lo = 0.0, hi = -1e300;
  for (const auto& g : groups) RangeOf(g.values, &lo, &hi);
  if (hi < 1e-12) hi = 1.0;
  double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  size_t ns = series_names.size();
  double group_w = plot_w / groups.size();
  double bar_w = group_w / (ns + 1);
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
     << "' height='" << kHeight << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
     << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";
  os << "<line x1='" << kLeft << "' y1='" << kHeight - kBottom << "' x2='"
     << kWidth - kRight << "' y2='" << kHeight - kBottom
     << "' stroke='black'/>\n";
  for (int g = 0; g <= 4; ++g) {
    double val = lo + (hi - lo) * g / 4.0;
    double y = kHeight - kBottom - plot_h * g / 4.0;
    os << "<text x='" << kLeft - 6 << "' y='" << y + 4
       << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
       << CsvWriter::Num(val) << "</text>\n";
  }
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    double gx = kLeft + group_w * gi;
    for (size_t si = 0; si < g.values.size() && si < ns; ++si) {
      double h = plot_h * (g.values[si] - lo) / (hi - lo);
      if (h < 0) h = 0;
      os << "<rect x='" << gx + bar_w * (si + 0.5) << "' y='"
         << kHeight - kBottom - h << "' width='" << bar_w * 0.9
         << "' height='" << h << "' fill='" << kPalette[si % 8] << "'/>\n";
    }
    os << "<text x='" << gx + group_w / 2 << "' y='" << kHeight - kBottom + 16
       << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
       << g.label << "</text>\n";
  }
  for (size_t si = 0; si < ns; ++si) {
    os << "<text x='" << kWidth - kRight - 4 << "' y='" << kTop + 16 * (si + 1)
       << "' text-anchor='end' fill='" << kPalette[si % 8]
       << "' font-family='sans-serif' font-size='12'>" << series_names[si]
       << "</text>\n";
  }
  os << "</svg>\n";
  WriteWholeFile(path, os.str());
}

}  // namespace xltts
