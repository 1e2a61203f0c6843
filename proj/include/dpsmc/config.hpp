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

#ifndef DPSMC_CONFIG_HPP
#define DPSMC_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpsmc/adapt.hpp"
#include "dpsmc/baselines.hpp"
#include "dpsmc/fisher.hpp"
#include "dpsmc/model.hpp"
#include "dpsmc/smc.hpp"

namespace dpsmc {

/// Experiment settings, deserializable from a flat JSON document. Unknown
/// keys are rejected. Defaults are the desk-scale settings; apply_paper_scale
/// switches to the full-scale constants.
struct ExperimentConfig {
  double epsilon = 1.0;
  std::uint64_t seed = 1;
  std::size_t n_records = 400;    // key "n"
  std::size_t n_particles = 500;  // key "N"

  double true_m = 50.0;
  double true_c = 3.1622776601683795;  // sqrt(10)

  double prior_mu_mean = 0.0;
  double prior_mu_var = 1e4;
  double prior_sigma2_shape = 1.0;
  double prior_sigma2_scale = 1.0;

  std::size_t outer_samples = 500;   // key "M"
  std::size_t inner_samples = 2000;  // key "Ng"

  double grid_a_min = -2.0, grid_a_max = 2.0;
  double grid_b_min = -2.0, grid_b_max = 2.0;
  std::size_t grid_resolution = 25;

  std::string score = "entry11";

  std::optional<double> a_star, b_star;    // precomputed base interval
  std::optional<double> fixed_l, fixed_r;  // non-adaptive interval override

  std::size_t rejuv_subset = 50;  // 0 = refresh all latent indices
  double x_proposal_sd = 0.0;     // <= 0: scale-matched to the particle
  std::string theta_update = "gibbs";  // or "random_walk"
  double rw_step_m = 0.5, rw_step_c = 0.25;

  std::size_t batch_iterations = 20000;
  std::size_t batch_burnin = 5000;

  std::size_t replications = 10;  // key "R"
  std::string methods = "adaptive,nonadaptive,batch";

  std::size_t particle_dump_every = 20;  // key "P"; 0 disables dumps
  unsigned threads = 0;                  // 0 = hardware concurrency

  void validate() const;
  void apply_paper_scale();

  Prior prior() const;
  GridSpec grid() const;
  FimConfig fim() const;
  ScoreFunction score_function() const;
  RejuvenationConfig rejuvenation() const;
  BatchMcmcConfig batch() const;
  /// Non-adaptive interval: the override if given, else true_m -/+ 10 true_c.
  TruncationInterval fixed_interval() const;
  std::vector<std::string> method_list() const;

  /// Strict JSON round trip. Parsing rejects unknown keys with ConfigError.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::filesystem::path& path);
  std::string to_json_text() const;

  /// Applies one key=value override (values in JSON literal syntax or bare
  /// strings). Throws ConfigError on unknown keys or malformed values.
  void set_key(const std::string& key, const std::string& value);
};

}  // namespace dpsmc

#endif  // DPSMC_CONFIG_HPP
