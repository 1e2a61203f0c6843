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

#ifndef DPSMC_HARNESS_HPP
#define DPSMC_HARNESS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpsmc/config.hpp"

namespace dpsmc {

/// Outcome of one experiment run. Artifacts are written under the output
/// directory with a method/epsilon/seed file prefix.
struct RunResult {
  std::string method;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t records_processed = 0;
  Theta post_mean;
  Theta post_sd;
  std::uint64_t weight_underflows = 0;
  std::optional<std::pair<double, double>> base_interval;  // adaptive runs
  std::string prefix;
};

/// Full online loop with Thompson-sampled adaptive truncation. If the config
/// does not carry a precomputed (a*, b*), the base-interval grid search runs
/// first and its grid is written alongside the run artifacts.
RunResult run_adaptive_experiment(const ExperimentConfig& cfg,
                                  const std::filesystem::path& out_dir);

/// Same loop with the constant interval (the configured override or
/// true_m -/+ 10 true_c).
RunResult run_nonadaptive_experiment(const ExperimentConfig& cfg,
                                     const std::filesystem::path& out_dir);

/// Generates records with the constant interval, then runs the batch chain
/// on the whole record set at once.
RunResult run_batch_experiment(const ExperimentConfig& cfg,
                               const std::filesystem::path& out_dir);

/// Replays an explicit interval sequence (element t-1 used for record t)
/// through the identical pipeline. Used to check that the adaptive and
/// non-adaptive paths share one code path.
RunResult run_with_interval_sequence(const ExperimentConfig& cfg,
                                     const std::vector<TruncationInterval>& ivs,
                                     const std::filesystem::path& out_dir,
                                     const std::string& method_name = "replay");

/// Base-interval grid search at the configured scale; writes the scored grid
/// as CSV into out_dir.
FimGridResult run_optimize_base(const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir);

struct ReplicationRow {
  std::string method;
  double epsilon = 0.0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Theta post_mean;
  Theta post_sd;
};

struct ReplicationSummary {
  std::vector<ReplicationRow> rows;
  std::filesystem::path table_csv;
  std::filesystem::path aggregate_csv;

  /// Median of |posterior mean of m - true_m| over the ok rows of a method.
  double median_abs_err_m(const std::string& method, double true_m) const;
};

/// R independent replications of each configured method with disjoint
/// derived seeds. Partial failures are recorded per row, not propagated.
ReplicationSummary run_replications(const ExperimentConfig& cfg,
                                    const std::filesystem::path& out_dir);

/// Renders SVG plots from the CSV artifacts in run_dir: per-run particle
/// scatters with posterior-mean and truncation-point overlays, and
/// replication box plots when a replication table is present.
void emit_plots(const std::filesystem::path& run_dir,
                const std::filesystem::path& out_dir);

}  // namespace dpsmc

#endif  // DPSMC_HARNESS_HPP
