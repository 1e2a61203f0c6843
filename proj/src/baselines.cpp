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

#include "dpsmc/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsmc {

std::vector<Theta> run_batch_mcmc(std::span<const ReleaseRecord> records,
                                  const LocationScaleModel& model,
                                  const Prior& prior,
                                  const BatchMcmcConfig& cfg, RngStream& rng) {
  if (cfg.iterations <= cfg.burn_in) {
    throw std::invalid_argument("run_batch_mcmc requires iterations > burn_in");
  }
  const std::size_t n = records.size();

  Particle state;
  {
    RngStream init = rng.child("batch_init");
    state.theta = prior.sample(init);
    state.latent_path.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = model.sample(state.theta, init);
      state.latent_path[k] = x;
      state.sum_x += x;
      state.sum_x2 += x * x;
    }
  }

  std::vector<Theta> samples;
  samples.reserve(cfg.iterations - cfg.burn_in);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    RngStream sweep = rng.child("batch_sweep", it);
    if (n > 0) {
      state = rejuvenate(state, records, model, prior, cfg.move, sweep);
    } else {
      // No data: the Gibbs conditionals reduce to exact prior draws.
      const double mu = gibbs_draw_mu(prior, state.theta.c * state.theta.c,
                                      0.0, 0, sweep);
      double c = state.theta.c;
      if (!prior.degenerate()) {
        c = std::sqrt(gibbs_draw_sigma2(prior, mu, 0.0, 0.0, 0, sweep));
      }
      state.theta = Theta{mu, c};
    }
    if (it >= cfg.burn_in) samples.push_back(state.theta);
  }
  return samples;
}

}  // namespace dpsmc
