// util/svg.h

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

#ifndef XLTTS_UTIL_SVG_H_
#define XLTTS_UTIL_SVG_H_

#include <string>
#include <vector>

namespace xltts {

// Dependency-free SVG emitters for the report plots. CSV siblings carry the
// authoritative numbers; these are for eyeballing only.

struct SvgSeries {
  std::string label;
  std::vector<double> y;  // x is the sample index
};

void WriteSvgLinePlot(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series);

struct SvgBarGroup {
  std::string label;                 // x-axis group label
  std::vector<double> values;        // one bar per series
};

void WriteSvgBarChart(const std::string& path, const std::string& title,
                      const std::vector<std::string>& series_names,
                      const std::vector<SvgBarGroup>& groups);

}  // namespace xltts

#endif  // XLTTS_UTIL_SVG_H_
