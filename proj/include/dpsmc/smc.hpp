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

#ifndef DPSMC_SMC_HPP
#define DPSMC_SMC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpsmc/model.hpp"
#include "dpsmc/privacy.hpp"
#include "dpsmc/rng.hpp"

namespace dpsmc {

/// One particle: a parameter value and the imputed latent observations
/// x_{1:t}, one per assimilated record. Running sums of the path are kept so
/// conjugate parameter updates cost O(1).
struct Particle {
  Theta theta;
  std::vector<double> latent_path;
  double sum_x = 0.0;
  double sum_x2 = 0.0;
};

/// Settings for the MCMC rejuvenation move.
struct RejuvenationConfig {
  /// Number of latent indices refreshed per sweep; 0 means all of them.
  /// The effective count is min(t, subset_size).
  std::size_t subset_size = 50;

  /// Random-walk sd for latent proposals. A nonpositive value means
  /// scale-matched: use the particle's current c.
  double x_proposal_sd = 0.0;

  enum class ThetaUpdate { kGibbs, kRandomWalk };
  ThetaUpdate theta_update = ThetaUpdate::kGibbs;

  /// Random-walk step sds for the parameter move (kRandomWalk only).
  double rw_step_m = 0.5;
  double rw_step_c = 0.25;
};

struct SmcDiagnostics {
  std::uint64_t weight_underflows = 0;
  std::uint64_t x_proposals = 0;
  std::uint64_t x_accepts = 0;
  std::uint64_t theta_proposals = 0;
  std::uint64_t theta_accepts = 0;
};

/// Weighted particle approximation of the posterior after t records.
struct ParticleSystem {
  std::vector<Particle> particles;
  std::vector<double> weights;   // nonnegative, sum to 1
  std::size_t t = 0;             // number of assimilated records
  std::vector<ReleaseRecord> records;  // the t assimilated records
  SmcDiagnostics diag;

  std::size_t size() const { return particles.size(); }
};

struct RejuvenationStats {
  std::uint64_t x_proposals = 0;
  std::uint64_t x_accepts = 0;
  std::uint64_t theta_proposals = 0;
  std::uint64_t theta_accepts = 0;
};

/// N i.i.d. prior draws with uniform weights and empty paths. N >= 2.
ParticleSystem smc_init(const Prior& prior, std::size_t n_particles,
                        RngStream& rng);

/// In-place log-sum-exp normalization of log weights into weights. Returns
/// false on total underflow, in which case the weights are set uniform.
bool normalize_log_weights(std::vector<double>& weights);

/// Multinomial resampling: N i.i.d. draws from the weighted empirical
/// distribution; weights reset to 1/N.
ParticleSystem resample_multinomial(const ParticleSystem& system,
                                    RngStream& rng);

/// Systematic resampling (one uniform offset, stratified positions).
/// Available behind configuration; multinomial is the default everywhere.
ParticleSystem resample_systematic(const ParticleSystem& system,
                                   RngStream& rng);

/// log acceptance ratio of a symmetric-proposal MH move on one latent value,
/// targeting p_theta(x) * Laplace(y - clamp(x), width/eps).
double mh_x_log_ratio(const LocationScaleModel& model, const Theta& theta,
                      double x_cur, double x_prop, const ReleaseRecord& rec);

/// Draw from p(m | c^2, x_{1:t}) under the semi-conjugate prior.
double gibbs_draw_mu(const Prior& prior, double sigma2, double sum_x,
                     std::size_t t, RngStream& rng);

/// Draw from p(c^2 | m, x_{1:t}) under the semi-conjugate prior.
double gibbs_draw_sigma2(const Prior& prior, double mu, double sum_x,
                         double sum_x2, std::size_t t, RngStream& rng);

/// One rejuvenation sweep over a particle: MH refresh of a random latent
/// subset, then a parameter update (Gibbs conditionals by default, random
/// walk MH as the generic fallback). Targets the posterior given `records`.
Particle rejuvenate(const Particle& particle,
                    std::span<const ReleaseRecord> records,
                    const LocationScaleModel& model, const Prior& prior,
                    const RejuvenationConfig& cfg, RngStream& rng,
                    RejuvenationStats* stats = nullptr);

/// One SMC update: resample, rejuvenate, propagate, weight. Requires
/// record.t == system.t + 1. Weighting is done in log space; if every raw
/// weight underflows to zero the weights fall back to uniform and a
/// diagnostics counter is incremented.
ParticleSystem smc_step(const ParticleSystem& system, const ReleaseRecord& rec,
                        const LocationScaleModel& model, const Prior& prior,
                        const RejuvenationConfig& cfg, RngStream& rng,
                        unsigned threads = 1);

/// Weighted posterior mean of (m, c). The reduction is order-independent, so
/// permuting particles leaves the result bit-identical.
Theta posterior_mean(const ParticleSystem& system);

/// Weighted posterior standard deviation of (m, c).
Theta posterior_sd(const ParticleSystem& system);

/// One draw from the weighted particle approximation.
Theta posterior_sample(const ParticleSystem& system, RngStream& rng);

/// Throws std::logic_error if a system invariant is broken (weight sum,
/// path lengths, NaNs). Used by tests and the harness.
void check_invariants(const ParticleSystem& system);

}  // namespace dpsmc

#endif  // DPSMC_SMC_HPP
