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

#ifndef DPSMC_FISHER_HPP
#define DPSMC_FISHER_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "dpsmc/model.hpp"
#include "dpsmc/privacy.hpp"
#include "dpsmc/rng.hpp"

namespace dpsmc {

/// Monte Carlo sizes for the information-matrix estimator: `outer_samples`
/// observations y, each scored with a self-normalized importance-sampling
/// gradient of `inner_samples` draws.
struct FimConfig {
  std::size_t outer_samples = 500;   // M
  std::size_t inner_samples = 2000;  // Ng
};

/// Symmetric 2x2 information matrix, stored by its unique entries.
struct InfoMatrix {
  double mm = 0.0;
  double mc = 0.0;
  double cc = 0.0;

  /// 0-based entry access.
  double operator()(int i, int j) const {
    if (i == 0 && j == 0) return mm;
    if (i == 1 && j == 1) return cc;
    return mc;
  }
  double trace() const { return mm + cc; }
};

/// Scalar ordering of information matrices: trace, a single entry, or a
/// weighted sum of the diagonal. All variants are linear in the matrix.
class ScoreFunction {
 public:
  static ScoreFunction trace();
  /// 1-based indices in {1, 2}.
  static ScoreFunction entry(int i, int j);
  static ScoreFunction weighted_diag(double w1, double w2);

  double operator()(const InfoMatrix& f) const { return apply(f.mm, f.mc, f.cc); }
  double apply(double mm, double mc, double cc) const;

  enum class Kind { kTrace, kEntry, kWeightedDiag };
  Kind kind() const { return kind_; }

 private:
  Kind kind_ = Kind::kTrace;
  int i_ = 0, j_ = 0;      // 0-based, kEntry
  double w1_ = 0, w2_ = 0; // kWeightedDiag
};

/// Self-normalized importance-sampling estimate of the score (gradient of the
/// log marginal observation density). `degenerate` is set when every weight
/// underflowed; the value is then the zero vector.
struct ScoreEstimate {
  std::array<double, 2> value{0.0, 0.0};
  bool degenerate = false;
};

/// Information-matrix estimate with per-entry Monte Carlo standard errors
/// (sample sd of the outer-product terms divided by sqrt(M)).
struct FimEstimate {
  InfoMatrix value;
  InfoMatrix std_error;
  std::size_t degenerate_count = 0;
};

ScoreEstimate score_estimate(const LocationScaleModel& model,
                             const Theta& theta, double y,
                             const TruncationInterval& iv, double eps,
                             std::size_t inner_samples, RngStream& rng);

/// Average of outer products of score estimates at observations drawn from
/// the model. The M outer iterations use independent substreams and may run
/// in parallel; the reduction is a pairwise tree, so the result is bitwise
/// reproducible for any thread count.
FimEstimate fim_estimate(const LocationScaleModel& model, const Theta& theta,
                         const TruncationInterval& iv, double eps,
                         const FimConfig& cfg, RngStream& rng,
                         unsigned threads = 1);

inline double score_matrix(const InfoMatrix& f, const ScoreFunction& sc) {
  return sc(f);
}

namespace detail {
/// Fills per-iteration outer-product terms; shared by fim_estimate and the
/// grid optimizer. Buffers must have size cfg.outer_samples.
void fim_terms(const LocationScaleModel& model, const Theta& theta,
               const TruncationInterval& iv, double eps, const FimConfig& cfg,
               RngStream& rng, unsigned threads, std::vector<double>& mm,
               std::vector<double>& mc, std::vector<double>& cc,
               std::size_t& degenerate_count);

/// Pairwise-tree mean and standard error of a term vector.
void tree_mean_se(const std::vector<double>& terms, double& mean, double& se);
}  // namespace detail

}  // namespace dpsmc

#endif  // DPSMC_FISHER_HPP
