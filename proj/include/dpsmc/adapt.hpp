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

#ifndef DPSMC_ADAPT_HPP
#define DPSMC_ADAPT_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dpsmc/fisher.hpp"
#include "dpsmc/smc.hpp"

namespace dpsmc {

/// Rectangular candidate grid for interval endpoints, `resolution` points per
/// axis inclusive of the bounds. Cells with lo >= hi are infeasible and
/// skipped.
struct GridSpec {
  GridSpec(double a_min, double a_max, double b_min, double b_max,
           std::size_t resolution);

  double a_min, a_max, b_min, b_max;
  std::size_t resolution;

  std::vector<double> a_points() const;
  std::vector<double> b_points() const;
};

struct GridEntry {
  double a;  // left endpoint (a for the base problem, l for the generic one)
  double b;  // right endpoint
  double score;
  double std_error;
};

/// Scored grid with its argmax. Ties resolve by smaller width, then smaller
/// |a+b|, then lexicographic (a, b).
struct FimGridResult {
  std::vector<GridEntry> entries;
  std::size_t argmax_index = 0;
  double a_star = 0.0;
  double b_star = 0.0;

  TruncationInterval best_interval() const {
    return TruncationInterval(a_star, b_star);
  }
};

/// Scores sc(F(theta)) over every feasible grid cell at the standardized base
/// parameter (0, 1). Done once per privacy level; the argmax transports to
/// any (m, c) through next_interval.
FimGridResult optimize_base_interval(const LocationScaleModel& model,
                                     double eps, const GridSpec& grid,
                                     const FimConfig& cfg,
                                     const ScoreFunction& sc, RngStream& rng,
                                     unsigned threads = 0);

/// Same grid search at an arbitrary parameter value, with the grid in raw
/// (l, r) coordinates.
FimGridResult optimize_interval_generic(const LocationScaleModel& model,
                                        const Theta& theta, double eps,
                                        const GridSpec& grid,
                                        const FimConfig& cfg,
                                        const ScoreFunction& sc,
                                        RngStream& rng, unsigned threads = 0);

/// Affine transport of the base optimum: [a* c + m, b* c + m].
TruncationInterval next_interval(const Theta& theta_draw, double a_star,
                                 double b_star);

/// Thompson step: one posterior draw, then the transported interval.
TruncationInterval thompson_select(const ParticleSystem& system, double a_star,
                                   double b_star, RngStream& rng);

/// Data-free first interval: 1% / 99% quantiles of m -/+ 3c over prior draws.
TruncationInterval initial_interval_from_prior(const Prior& prior,
                                               RngStream& rng,
                                               std::size_t draws = 1000);

/// CSV dump: header a,b,score,stderr; argmax echoed as a footer comment.
void write_grid_csv(const FimGridResult& result, std::ostream& os);

/// The argmax ordering: higher score, then smaller width, then smaller
/// |a+b|, then lexicographic (a, b).
bool grid_entry_better(const GridEntry& lhs, const GridEntry& rhs);

}  // namespace dpsmc

#endif  // DPSMC_ADAPT_HPP
