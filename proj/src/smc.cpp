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

#include "dpsmc/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpsmc/parallel.hpp"

namespace dpsmc {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

/// Order-independent weighted sum: sorts the products before accumulating so
/// any permutation of the inputs yields the identical floating-point result.
double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double weighted_moment(const ParticleSystem& system, auto&& extract) {
  std::vector<double> products(system.size());
  std::vector<double> ws(system.weights);
  for (std::size_t i = 0; i < system.size(); ++i) {
    products[i] = system.weights[i] * extract(system.particles[i]);
  }
  const double num = sorted_sum(products);
  const double den = sorted_sum(ws);
  return num / den;
}

/// Sum of log p_theta(x_k) over the path. The normal family has an O(1)
/// sufficient-statistics form; other families walk the path.
double path_log_likelihood(const LocationScaleModel& model, const Theta& theta,
                           const Particle& particle) {
  const std::size_t t = particle.latent_path.size();
  if (t == 0) return 0.0;
  if (model.family() == "normal") {
    const double quad =
        std::max(0.0, particle.sum_x2 - 2.0 * theta.m * particle.sum_x +
                          static_cast<double>(t) * theta.m * theta.m);
    return -static_cast<double>(t) * (std::log(theta.c) + kLogSqrt2Pi) -
           quad / (2.0 * theta.c * theta.c);
  }
  double s = 0.0;
  for (double x : particle.latent_path) s += model.log_density(theta, x);
  return s;
}

void validate_config(const RejuvenationConfig& cfg,
                     const LocationScaleModel& model) {
  if (cfg.theta_update == RejuvenationConfig::ThetaUpdate::kGibbs &&
      model.family() != "normal") {
    throw std::invalid_argument(
        "Gibbs parameter updates require the normal family; "
        "use the random-walk update");
  }
  if (cfg.theta_update == RejuvenationConfig::ThetaUpdate::kRandomWalk &&
      (!(cfg.rw_step_m > 0.0) || !(cfg.rw_step_c > 0.0))) {
    throw std::invalid_argument("random-walk steps must be positive");
  }
}

}  // namespace

ParticleSystem smc_init(const Prior& prior, std::size_t n_particles,
                        RngStream& rng) {
  if (n_particles < 2) {
    throw std::invalid_argument("smc_init requires at least 2 particles");
  }
  ParticleSystem system;
  system.particles.resize(n_particles);
  system.weights.assign(n_particles, 1.0 / static_cast<double>(n_particles));
  for (std::size_t i = 0; i < n_particles; ++i) {
    RngStream sub = rng.child("init", i);
    system.particles[i].theta = prior.sample(sub);
  }
  return system;
}

bool normalize_log_weights(std::vector<double>& weights) {
  const std::size_t n = weights.size();
  const double max_lw = *std::max_element(weights.begin(), weights.end());
  if (std::isfinite(max_lw)) {
    double total = 0.0;
    for (double& w : weights) {
      w = std::exp(w - max_lw);
      total += w;
    }
    if (total > 0.0 && std::isfinite(total)) {
      for (double& w : weights) w /= total;
      return true;
    }
  }
  std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(n));
  return false;
}

ParticleSystem resample_multinomial(const ParticleSystem& system,
                                    RngStream& rng) {
  const std::size_t n = system.size();
  std::vector<double> cum(n);
  std::partial_sum(system.weights.begin(), system.weights.end(), cum.begin());
  ParticleSystem out;
  out.t = system.t;
  out.records = system.records;
  out.diag = system.diag;
  out.weights.assign(n, 1.0 / static_cast<double>(n));
  out.particles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform01() * cum.back();
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    const std::size_t idx =
        std::min<std::size_t>(n - 1, static_cast<std::size_t>(it - cum.begin()));
    out.particles.push_back(system.particles[idx]);
  }
  return out;
}

ParticleSystem resample_systematic(const ParticleSystem& system,
                                   RngStream& rng) {
  const std::size_t n = system.size();
  std::vector<double> cum(n);
  std::partial_sum(system.weights.begin(), system.weights.end(), cum.begin());
  ParticleSystem out;
  out.t = system.t;
  out.records = system.records;
  out.diag = system.diag;
  out.weights.assign(n, 1.0 / static_cast<double>(n));
  out.particles.reserve(n);
  const double step = cum.back() / static_cast<double>(n);
  double u = rng.uniform01() * step;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (idx + 1 < n && cum[idx] < u) ++idx;
    out.particles.push_back(system.particles[idx]);
    u += step;
  }
  return out;
}

double mh_x_log_ratio(const LocationScaleModel& model, const Theta& theta,
                      double x_cur, double x_prop, const ReleaseRecord& rec) {
  const double scale = rec.interval.width() / rec.epsilon;
  const double cur = model.log_density(theta, x_cur) -
                     std::abs(rec.y - rec.interval.clamp(x_cur)) / scale;
  const double prop = model.log_density(theta, x_prop) -
                      std::abs(rec.y - rec.interval.clamp(x_prop)) / scale;
  return prop - cur;
}

double gibbs_draw_mu(const Prior& prior, double sigma2, double sum_x,
                     std::size_t t, RngStream& rng) {
  if (prior.degenerate() || prior.mu_var() == 0.0) return prior.mu_mean();
  const double precision =
      1.0 / prior.mu_var() + static_cast<double>(t) / sigma2;
  const double var = 1.0 / precision;
  const double mean = var * (prior.mu_mean() / prior.mu_var() + sum_x / sigma2);
  return mean + std::sqrt(var) * rng.normal();
}

double gibbs_draw_sigma2(const Prior& prior, double mu, double sum_x,
                         double sum_x2, std::size_t t, RngStream& rng) {
  const double quad = std::max(
      0.0, sum_x2 - 2.0 * mu * sum_x + static_cast<double>(t) * mu * mu);
  const double shape = prior.sigma2_shape() + 0.5 * static_cast<double>(t);
  const double scale = prior.sigma2_scale() + 0.5 * quad;
  return rng.inverse_gamma(shape, scale);
}

Particle rejuvenate(const Particle& particle,
                    std::span<const ReleaseRecord> records,
                    const LocationScaleModel& model, const Prior& prior,
                    const RejuvenationConfig& cfg, RngStream& rng,
                    RejuvenationStats* stats) {
  const std::size_t t = particle.latent_path.size();
  if (t == 0 || records.size() != t) {
    throw std::invalid_argument(
        "rejuvenate requires a nonempty path matching the record history");
  }
  validate_config(cfg, model);

  Particle out = particle;

  // Latent refresh on a uniform subset of min(t, K) indices.
  const std::size_t k_count =
      cfg.subset_size == 0 ? t : std::min(t, cfg.subset_size);
  std::vector<std::size_t> indices(t);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t j = 0; j < k_count; ++j) {
    const std::size_t pick = j + rng.uniform_index(t - j);
    std::swap(indices[j], indices[pick]);
  }

  for (std::size_t j = 0; j < k_count; ++j) {
    const std::size_t k = indices[j];
    const double sd =
        cfg.x_proposal_sd > 0.0 ? cfg.x_proposal_sd : out.theta.c;
    const double x_cur = out.latent_path[k];
    const double x_prop = x_cur + sd * rng.normal();
    const double log_ratio =
        mh_x_log_ratio(model, out.theta, x_cur, x_prop, records[k]);
    const double u = rng.uniform01();
    if (stats) ++stats->x_proposals;
    if (std::log(u) < log_ratio) {
      out.latent_path[k] = x_prop;
      out.sum_x += x_prop - x_cur;
      out.sum_x2 += x_prop * x_prop - x_cur * x_cur;
      if (stats) ++stats->x_accepts;
    }
  }

  // Parameter update targeting p(theta | x_{1:t}).
  if (cfg.theta_update == RejuvenationConfig::ThetaUpdate::kGibbs) {
    const double mu =
        gibbs_draw_mu(prior, out.theta.c * out.theta.c, out.sum_x, t, rng);
    double c = out.theta.c;
    if (!prior.degenerate()) {
      c = std::sqrt(gibbs_draw_sigma2(prior, mu, out.sum_x, out.sum_x2, t, rng));
    }
    out.theta = Theta{mu, c};
    if (stats) {
      ++stats->theta_proposals;
      ++stats->theta_accepts;
    }
  } else {
    const Theta prop{out.theta.m + cfg.rw_step_m * rng.normal(),
                     out.theta.c + cfg.rw_step_c * rng.normal()};
    if (stats) ++stats->theta_proposals;
    const double u = rng.uniform01();
    if (prop.c > 0.0 && !prior.degenerate()) {
      const double log_ratio =
          prior.log_density(prop) + path_log_likelihood(model, prop, out) -
          prior.log_density(out.theta) -
          path_log_likelihood(model, out.theta, out);
      if (std::log(u) < log_ratio) {
        out.theta = prop;
        if (stats) ++stats->theta_accepts;
      }
    }
  }
  return out;
}

ParticleSystem smc_step(const ParticleSystem& system, const ReleaseRecord& rec,
                        const LocationScaleModel& model, const Prior& prior,
                        const RejuvenationConfig& cfg, RngStream& rng,
                        unsigned threads) {
  if (rec.t != system.t + 1) {
    throw std::invalid_argument("smc_step requires record.t == system.t + 1");
  }
  validate_config(cfg, model);

  RngStream resample_stream = rng.child("resample");
  ParticleSystem next = resample_multinomial(system, resample_stream);
  next.t = system.t + 1;
  next.records.push_back(rec);

  const std::size_t n = next.size();
  std::vector<double> log_weights(n);
  std::vector<RejuvenationStats> stats(n);
  const std::span<const ReleaseRecord> history(system.records);

  parallel_for(n, threads, [&](std::size_t i) {
    Particle& p = next.particles[i];
    if (system.t >= 1) {
      RngStream move = rng.child("move", i);
      p = rejuvenate(p, history, model, prior, cfg, move, &stats[i]);
    }
    RngStream prop = rng.child("prop", i);
    const double x_new = model.sample(p.theta, prop);
    p.latent_path.push_back(x_new);
    p.sum_x += x_new;
    p.sum_x2 += x_new * x_new;
    log_weights[i] =
        -std::abs(rec.y - rec.interval.clamp(x_new)) * rec.epsilon /
        rec.interval.width();
  });

  for (const auto& s : stats) {
    next.diag.x_proposals += s.x_proposals;
    next.diag.x_accepts += s.x_accepts;
    next.diag.theta_proposals += s.theta_proposals;
    next.diag.theta_accepts += s.theta_accepts;
  }

  if (!normalize_log_weights(log_weights)) ++next.diag.weight_underflows;
  next.weights = std::move(log_weights);
  check_invariants(next);
  return next;
}

Theta posterior_mean(const ParticleSystem& system) {
  Theta mean;
  mean.m = weighted_moment(system, [](const Particle& p) { return p.theta.m; });
  mean.c = weighted_moment(system, [](const Particle& p) { return p.theta.c; });
  return mean;
}

Theta posterior_sd(const ParticleSystem& system) {
  const Theta mean = posterior_mean(system);
  const double var_m = weighted_moment(system, [&](const Particle& p) {
    const double d = p.theta.m - mean.m;
    return d * d;
  });
  const double var_c = weighted_moment(system, [&](const Particle& p) {
    const double d = p.theta.c - mean.c;
    return d * d;
  });
  return Theta{std::sqrt(std::max(0.0, var_m)), std::sqrt(std::max(0.0, var_c))};
}

Theta posterior_sample(const ParticleSystem& system, RngStream& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    acc += system.weights[i];
    if (u <= acc) return system.particles[i].theta;
  }
  return system.particles.back().theta;
}

void check_invariants(const ParticleSystem& system) {
  if (system.size() < 2) throw std::logic_error("particle system too small");
  if (system.weights.size() != system.size()) {
    throw std::logic_error("weight/particle count mismatch");
  }
  double total = 0.0;
  for (double w : system.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::logic_error("invalid particle weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("weights do not sum to 1");
  }
  if (system.records.size() != system.t) {
    throw std::logic_error("record history length mismatch");
  }
  for (const auto& p : system.particles) {
    if (p.latent_path.size() != system.t) {
      throw std::logic_error("latent path length mismatch");
    }
    if (!(p.theta.c > 0.0) || !std::isfinite(p.theta.m)) {
      throw std::logic_error("invalid particle parameter");
    }
  }
}

}  // namespace dpsmc
