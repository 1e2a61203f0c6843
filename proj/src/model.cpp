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

#include "dpsmc/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dpsmc {

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

void require_valid(const Theta& theta) {
  if (!(theta.c > 0.0) || !std::isfinite(theta.c) || !std::isfinite(theta.m)) {
    throw std::invalid_argument("Theta requires finite m and c > 0");
  }
}
}  // namespace

LocationScaleModel::LocationScaleModel(std::string family,
                                       BaseFn base_log_density,
                                       BaseFn base_score,
                                       BaseSampler base_sampler)
    : family_(std::move(family)),
      base_log_density_(std::move(base_log_density)),
      base_score_(std::move(base_score)),
      base_sampler_(std::move(base_sampler)) {
  if (!base_log_density_ || !base_score_ || !base_sampler_) {
    throw std::invalid_argument("LocationScaleModel requires all base functions");
  }
}

LocationScaleModel LocationScaleModel::normal() {
  return LocationScaleModel(
      "normal",
      [](double z) { return -0.5 * z * z - kLogSqrt2Pi; },
      [](double z) { return -z; },
      [](RngStream& rng) { return rng.normal(); });
}

double LocationScaleModel::sample(const Theta& theta, RngStream& rng) const {
  require_valid(theta);
  return theta.m + theta.c * base_sampler_(rng);
}

double LocationScaleModel::log_density(const Theta& theta, double x) const {
  require_valid(theta);
  const double z = (x - theta.m) / theta.c;
  return base_log_density_(z) - std::log(theta.c);
}

std::array<double, 2> LocationScaleModel::grad_log_density(const Theta& theta,
                                                           double x) const {
  require_valid(theta);
  const double z = (x - theta.m) / theta.c;
  const double psi = base_score_(z);
  return {-psi / theta.c, -(psi * z + 1.0) / theta.c};
}

Prior Prior::make(double mu_mean, double mu_var, double sigma2_shape,
                  double sigma2_scale) {
  if (!(mu_var > 0.0) || !(sigma2_shape > 0.0) || !(sigma2_scale > 0.0)) {
    throw std::invalid_argument(
        "Prior requires mu_var > 0, sigma2_shape > 0, sigma2_scale > 0");
  }
  Prior p;
  p.mu_mean_ = mu_mean;
  p.mu_var_ = mu_var;
  p.sigma2_shape_ = sigma2_shape;
  p.sigma2_scale_ = sigma2_scale;
  return p;
}

Prior Prior::point_mass(double m, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("point_mass requires c > 0");
  Prior p;
  p.degenerate_ = true;
  p.mu_mean_ = m;
  p.mu_var_ = 0.0;
  p.fixed_c_ = c;
  return p;
}

Theta Prior::sample(RngStream& rng) const {
  if (degenerate_) return Theta{mu_mean_, fixed_c_};
  Theta theta;
  theta.m = mu_mean_ + std::sqrt(mu_var_) * rng.normal();
  theta.c = std::sqrt(rng.inverse_gamma(sigma2_shape_, sigma2_scale_));
  return theta;
}

double Prior::log_density(const Theta& theta) const {
  if (degenerate_) {
    throw std::logic_error("log_density is undefined for a point-mass prior");
  }
  require_valid(theta);
  const double dm = theta.m - mu_mean_;
  const double log_mu = -0.5 * dm * dm / mu_var_ - 0.5 * std::log(mu_var_) - kLogSqrt2Pi;
  const double s2 = theta.c * theta.c;
  // InverseGamma(shape a, scale b): b^a / Gamma(a) * x^{-a-1} * exp(-b / x)
  const double a = sigma2_shape_;
  const double b = sigma2_scale_;
  const double log_s2 = a * std::log(b) - std::lgamma(a) - (a + 1.0) * std::log(s2) - b / s2;
  return log_mu + log_s2 + std::log(2.0 * theta.c);
}

}  // namespace dpsmc
