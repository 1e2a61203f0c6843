// Copyright 2026 The dpsmc Authors
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

#ifndef DPSMC_SVG_HPP
#define DPSMC_SVG_HPP

#include <optional>
#include <string>
#include <vector>

namespace dpsmc {

// Minimal deterministic SVG rendering for run traces and replication
// summaries. Output is a pure function of the inputs.

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
};

class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void add_points(const SvgSeries& s, const std::string& color, double radius,
                  const std::string& group_id = "");
  void add_line(const SvgSeries& s, const std::string& color, double width,
                bool dashed = false);
  void add_hline(double y, const std::string& color, bool dashed = true);

  std::string render() const;

 private:
  struct Points {
    SvgSeries s;
    std::string color;
    double radius;
    std::string group_id;
  };
  struct Line {
    SvgSeries s;
    std::string color;
    double width;
    bool dashed;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Points> points_;
  std::vector<Line> lines_;
  std::vector<std::pair<double, std::pair<std::string, bool>>> hlines_;
};

struct BoxStats {
  std::string label;
  double lo, q1, median, q3, hi;
};

std::string render_box_plot(const std::string& title,
                            const std::string& y_label,
                            const std::vector<BoxStats>& boxes,
                            std::optional<double> reference);

}  // namespace dpsmc

#endif  // DPSMC_SVG_HPP
