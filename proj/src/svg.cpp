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

#include "dpsmc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dpsmc {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 480;
constexpr double kMarginLeft = 70, kMarginRight = 20;
constexpr double kMarginTop = 40, kMarginBottom = 55;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(lo < hi)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double d = 0.05 * (hi - lo);
    lo -= d;
    hi += d;
  }
};

std::vector<double> ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / target)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * mult) <= target) {
      step *= mult;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  }
  return out;
}

void render_frame(std::ostringstream& os, const std::string& title,
                  const std::string& x_label, const std::string& y_label,
                  const Range& xr, const Range& yr) {
  os << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='"
     << (kWidth - kMarginLeft - kMarginRight) << "' height='"
     << (kHeight - kMarginTop - kMarginBottom)
     << "' fill='none' stroke='black'/>\n";
  os << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
     << "font-size='15' font-family='sans-serif'>" << title << "</text>\n";
  os << "<text x='" << kWidth / 2 << "' y='" << (kHeight - 12)
     << "' text-anchor='middle' font-size='13' font-family='sans-serif'>"
     << x_label << "</text>\n";
  os << "<text x='16' y='" << kHeight / 2
     << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
     << "transform='rotate(-90 16 " << kHeight / 2 << ")'>" << y_label
     << "</text>\n";
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  for (double tv : ticks(xr.lo, xr.hi)) {
    const double px = kMarginLeft + (tv - xr.lo) / (xr.hi - xr.lo) * plot_w;
    os << "<line x1='" << num(px) << "' y1='" << (kHeight - kMarginBottom)
       << "' x2='" << num(px) << "' y2='" << (kHeight - kMarginBottom + 5)
       << "' stroke='black'/>\n";
    os << "<text x='" << num(px) << "' y='" << (kHeight - kMarginBottom + 18)
       << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
       << num(tv) << "</text>\n";
  }
  for (double tv : ticks(yr.lo, yr.hi)) {
    const double py = kHeight - kMarginBottom - (tv - yr.lo) / (yr.hi - yr.lo) * plot_h;
    os << "<line x1='" << (kMarginLeft - 5) << "' y1='" << num(py) << "' x2='"
       << kMarginLeft << "' y2='" << num(py) << "' stroke='black'/>\n";
    os << "<text x='" << (kMarginLeft - 8) << "' y='" << num(py + 4)
       << "' text-anchor='end' font-size='11' font-family='sans-serif'>"
       << num(tv) << "</text>\n";
  }
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::add_points(const SvgSeries& s, const std::string& color,
                         double radius, const std::string& group_id) {
  points_.push_back({s, color, radius, group_id});
}

void SvgPlot::add_line(const SvgSeries& s, const std::string& color,
                       double width, bool dashed) {
  lines_.push_back({s, color, width, dashed});
}

void SvgPlot::add_hline(double y, const std::string& color, bool dashed) {
  hlines_.push_back({y, {color, dashed}});
}

std::string SvgPlot::render() const {
  Range xr, yr;
  for (const auto& p : points_) {
    for (double v : p.s.x) xr.include(v);
    for (double v : p.s.y) yr.include(v);
  }
  for (const auto& l : lines_) {
    for (double v : l.s.x) xr.include(v);
    for (double v : l.s.y) yr.include(v);
  }
  for (const auto& h : hlines_) yr.include(h.first);
  xr.pad();
  yr.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double v) {
    return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double v) {
    return kHeight - kMarginBottom - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
     << "' height='" << kHeight << "'>\n";
  render_frame(os, title_, x_label_, y_label_, xr, yr);
  for (const auto& h : hlines_) {
    os << "<line x1='" << kMarginLeft << "' y1='" << num(py(h.first))
       << "' x2='" << (kWidth - kMarginRight) << "' y2='" << num(py(h.first))
       << "' stroke='" << h.second.first << "'"
       << (h.second.second ? " stroke-dasharray='6 4'" : "") << "/>\n";
  }
  for (const auto& p : points_) {
    os << "<g" << (p.group_id.empty() ? "" : " id='" + p.group_id + "'")
       << " fill='" << p.color << "' fill-opacity='0.45'>\n";
    for (std::size_t i = 0; i < p.s.x.size(); ++i) {
      os << "<circle cx='" << num(px(p.s.x[i])) << "' cy='" << num(py(p.s.y[i]))
         << "' r='" << num(p.radius) << "'/>\n";
    }
    os << "</g>\n";
  }
  for (const auto& l : lines_) {
    os << "<polyline fill='none' stroke='" << l.color << "' stroke-width='"
       << num(l.width) << "'" << (l.dashed ? " stroke-dasharray='6 4'" : "")
       << " points='";
    for (std::size_t i = 0; i < l.s.x.size(); ++i) {
      if (i) os << ' ';
      os << num(px(l.s.x[i])) << ',' << num(py(l.s.y[i]));
    }
    os << "'/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_box_plot(const std::string& title,
                            const std::string& y_label,
                            const std::vector<BoxStats>& boxes,
                            std::optional<double> reference) {
  Range yr;
  for (const auto& b : boxes) {
    yr.include(b.lo);
    yr.include(b.hi);
  }
  if (reference) yr.include(*reference);
  yr.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto py = [&](double v) {
    return kHeight - kMarginBottom - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
     << "' height='" << kHeight << "'>\n";
  Range xr;
  xr.lo = 0.0;
  xr.hi = static_cast<double>(boxes.size());
  render_frame(os, title, "", y_label, xr, yr);
  if (reference) {
    os << "<line x1='" << kMarginLeft << "' y1='" << num(py(*reference))
       << "' x2='" << (kWidth - kMarginRight) << "' y2='" << num(py(*reference))
       << "' stroke='black' stroke-dasharray='6 4'/>\n";
  }
  const double slot = plot_w / static_cast<double>(boxes.size());
  const double half = 0.30 * slot;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double cx = kMarginLeft + (static_cast<double>(i) + 0.5) * slot;
    os << "<g stroke='steelblue' fill='none'>\n";
    os << "<line x1='" << num(cx) << "' y1='" << num(py(b.lo)) << "' x2='"
       << num(cx) << "' y2='" << num(py(b.q1)) << "'/>\n";
    os << "<line x1='" << num(cx) << "' y1='" << num(py(b.q3)) << "' x2='"
       << num(cx) << "' y2='" << num(py(b.hi)) << "'/>\n";
    os << "<line x1='" << num(cx - half * 0.6) << "' y1='" << num(py(b.lo))
       << "' x2='" << num(cx + half * 0.6) << "' y2='" << num(py(b.lo)) << "'/>\n";
    os << "<line x1='" << num(cx - half * 0.6) << "' y1='" << num(py(b.hi))
       << "' x2='" << num(cx + half * 0.6) << "' y2='" << num(py(b.hi)) << "'/>\n";
    os << "<rect x='" << num(cx - half) << "' y='" << num(py(b.q3))
       << "' width='" << num(2 * half) << "' height='"
       << num(py(b.q1) - py(b.q3)) << "' fill='aliceblue'/>\n";
    os << "<line x1='" << num(cx - half) << "' y1='" << num(py(b.median))
       << "' x2='" << num(cx + half) << "' y2='" << num(py(b.median))
       << "' stroke='crimson'/>\n";
    os << "</g>\n";
    os << "<text x='" << num(cx) << "' y='" << (kHeight - kMarginBottom + 34)
       << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
       << b.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dpsmc
