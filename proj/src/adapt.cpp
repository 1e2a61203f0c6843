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

#include "dpsmc/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "dpsmc/parallel.hpp"

namespace dpsmc {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return pts;
}

FimGridResult evaluate_grid(const LocationScaleModel& model, const Theta& theta,
                            double eps, const GridSpec& grid,
                            const FimConfig& cfg, const ScoreFunction& sc,
                            RngStream& rng, unsigned threads) {
  const auto as = grid.a_points();
  const auto bs = grid.b_points();
  std::vector<std::pair<double, double>> cells;
  cells.reserve(as.size() * bs.size());
  for (double a : as) {
    for (double b : bs) {
      if (a < b) cells.emplace_back(a, b);
    }
  }
  if (cells.empty()) {
    throw std::invalid_argument("interval grid has no feasible cell (lo < hi)");
  }

  FimGridResult result;
  result.entries.resize(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    RngStream cell_rng = rng.child("fim_cell", k);
    const TruncationInterval iv(cells[k].first, cells[k].second);
    std::vector<double> mm, mc, cc;
    std::size_t degenerate = 0;
    detail::fim_terms(model, theta, iv, eps, cfg, cell_rng, 1, mm, mc, cc,
                      degenerate);
    // The score variants are linear in the matrix, so scoring the per-draw
    // terms gives the exact mean and standard error of the cell score.
    std::vector<double> scored(mm.size());
    for (std::size_t j = 0; j < mm.size(); ++j) {
      scored[j] = sc.apply(mm[j], mc[j], cc[j]);
    }
    GridEntry& e = result.entries[k];
    e.a = cells[k].first;
    e.b = cells[k].second;
    detail::tree_mean_se(scored, e.score, e.std_error);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < result.entries.size(); ++k) {
    if (grid_entry_better(result.entries[k], result.entries[best])) best = k;
  }
  result.argmax_index = best;
  result.a_star = result.entries[best].a;
  result.b_star = result.entries[best].b;
  return result;
}

}  // namespace

bool grid_entry_better(const GridEntry& lhs, const GridEntry& rhs) {
  if (lhs.score != rhs.score) return lhs.score > rhs.score;
  const double lw = lhs.b - lhs.a, rw = rhs.b - rhs.a;
  if (lw != rw) return lw < rw;
  const double lc = std::abs(lhs.a + lhs.b), rc = std::abs(rhs.a + rhs.b);
  if (lc != rc) return lc < rc;
  if (lhs.a != rhs.a) return lhs.a < rhs.a;
  return lhs.b < rhs.b;
}

GridSpec::GridSpec(double a_min_, double a_max_, double b_min_, double b_max_,
                   std::size_t resolution_)
    : a_min(a_min_), a_max(a_max_), b_min(b_min_), b_max(b_max_),
      resolution(resolution_) {
  if (!(a_min < a_max) || !(b_min < b_max) || resolution < 2) {
    throw std::invalid_argument(
        "GridSpec requires a_min < a_max, b_min < b_max, resolution >= 2");
  }
}

std::vector<double> GridSpec::a_points() const {
  return linspace(a_min, a_max, resolution);
}

std::vector<double> GridSpec::b_points() const {
  return linspace(b_min, b_max, resolution);
}

FimGridResult optimize_base_interval(const LocationScaleModel& model,
                                     double eps, const GridSpec& grid,
                                     const FimConfig& cfg,
                                     const ScoreFunction& sc, RngStream& rng,
                                     unsigned threads) {
  return evaluate_grid(model, Theta{0.0, 1.0}, eps, grid, cfg, sc, rng, threads);
}

FimGridResult optimize_interval_generic(const LocationScaleModel& model,
                                        const Theta& theta, double eps,
                                        const GridSpec& grid,
                                        const FimConfig& cfg,
                                        const ScoreFunction& sc,
                                        RngStream& rng, unsigned threads) {
  return evaluate_grid(model, theta, eps, grid, cfg, sc, rng, threads);
}

TruncationInterval next_interval(const Theta& theta_draw, double a_star,
                                 double b_star) {
  if (!(theta_draw.c > 0.0)) {
    throw std::invalid_argument("next_interval requires a positive scale");
  }
  if (!(a_star < b_star)) {
    throw std::invalid_argument("next_interval requires a_star < b_star");
  }
  return TruncationInterval(a_star * theta_draw.c + theta_draw.m,
                            b_star * theta_draw.c + theta_draw.m);
}

TruncationInterval thompson_select(const ParticleSystem& system, double a_star,
                                   double b_star, RngStream& rng) {
  return next_interval(posterior_sample(system, rng), a_star, b_star);
}

TruncationInterval initial_interval_from_prior(const Prior& prior,
                                               RngStream& rng,
                                               std::size_t draws) {
  if (draws < 2) throw std::invalid_argument("need at least 2 prior draws");
  std::vector<double> lows(draws), highs(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    const Theta theta = prior.sample(rng);
    lows[i] = theta.m - 3.0 * theta.c;
    highs[i] = theta.m + 3.0 * theta.c;
  }
  std::sort(lows.begin(), lows.end());
  std::sort(highs.begin(), highs.end());
  const auto quantile = [](const std::vector<double>& sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t k = static_cast<std::size_t>(h);
    if (k + 1 >= sorted.size()) return sorted.back();
    return sorted[k] + (h - static_cast<double>(k)) * (sorted[k + 1] - sorted[k]);
  };
  double l = quantile(lows, 0.01);
  double r = quantile(highs, 0.99);
  if (!(l < r)) {  // collapsed prior; pad around the common point
    const double mid = 0.5 * (l + r);
    const double pad = std::max(1.0, std::abs(mid));
    l = mid - pad;
    r = mid + pad;
  }
  return TruncationInterval(l, r);
}

void write_grid_csv(const FimGridResult& result, std::ostream& os) {
  os << "a,b,score,stderr\n";
  char buf[160];
  for (const auto& e : result.entries) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", e.a, e.b,
                  e.score, e.std_error);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# argmax,%.17g,%.17g\n", result.a_star,
                result.b_star);
  os << buf;
}

}  // namespace dpsmc
