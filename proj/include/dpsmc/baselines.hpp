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

#ifndef DPSMC_BASELINES_HPP
#define DPSMC_BASELINES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "dpsmc/smc.hpp"

namespace dpsmc {

/// Batch sampler settings. The chain iterates the same sweep the SMC engine
/// uses for rejuvenation, with every latent index refreshed per sweep.
struct BatchMcmcConfig {
  std::size_t iterations = 20000;
  std::size_t burn_in = 5000;
  RejuvenationConfig move{.subset_size = 0};
};

/// MCMC on the full-record posterior: returns the post-burn-in parameter
/// samples. With an empty record set the sweeps reduce to exact prior draws.
std::vector<Theta> run_batch_mcmc(std::span<const ReleaseRecord> records,
                                  const LocationScaleModel& model,
                                  const Prior& prior,
                                  const BatchMcmcConfig& cfg, RngStream& rng);

}  // namespace dpsmc

#endif  // DPSMC_BASELINES_HPP
