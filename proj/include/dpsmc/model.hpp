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

#ifndef DPSMC_MODEL_HPP
#define DPSMC_MODEL_HPP

#include <array>
#include <functional>
#include <string>

#include "dpsmc/rng.hpp"

namespace dpsmc {

/// Location / scale parameter pair of the population family. `c` is a
/// standard-deviation-like scale and must be positive.
struct Theta {
  double m = 0.0;
  double c = 1.0;
};

/// A univariate location-scale family: f(x; m, c) = g((x - m) / c) / c for a
/// base density g. The built-in instance is the normal family with g the
/// standard normal density.
class LocationScaleModel {
 public:
  using BaseFn = std::function<double(double)>;
  using BaseSampler = std::function<double(RngStream&)>;

  /// base_score is d/dz of the base log density.
  LocationScaleModel(std::string family, BaseFn base_log_density,
                     BaseFn base_score, BaseSampler base_sampler);

  static LocationScaleModel normal();

  const std::string& family() const { return family_; }

  double base_log_density(double z) const { return base_log_density_(z); }
  double base_sample(RngStream& rng) const { return base_sampler_(rng); }

  /// One draw from the population distribution at theta.
  double sample(const Theta& theta, RngStream& rng) const;

  /// log f(x; m, c).
  double log_density(const Theta& theta, double x) const;

  /// (d/dm, d/dc) of log f(x; m, c).
  std::array<double, 2> grad_log_density(const Theta& theta, double x) const;

 private:
  std::string family_;
  BaseFn base_log_density_;
  BaseFn base_score_;
  BaseSampler base_sampler_;
};

/// Semi-conjugate prior: m ~ Normal(mu_mean, mu_var) independent of
/// c^2 ~ InverseGamma(sigma2_shape, sigma2_scale). The scale c = sqrt(c^2)
/// conversion is owned here; log_density is a density in (m, c), including
/// the 2c Jacobian of the c^2 -> c change of variables.
class Prior {
 public:
  static Prior make(double mu_mean, double mu_var, double sigma2_shape,
                    double sigma2_scale);

  /// Point mass at (m, c); for degenerate-limit tests. log_density is not
  /// defined for a point mass.
  static Prior point_mass(double m, double c);

  Theta sample(RngStream& rng) const;
  double log_density(const Theta& theta) const;

  bool degenerate() const { return degenerate_; }
  double mu_mean() const { return mu_mean_; }
  double mu_var() const { return mu_var_; }
  double sigma2_shape() const { return sigma2_shape_; }
  double sigma2_scale() const { return sigma2_scale_; }

 private:
  Prior() = default;
  double mu_mean_ = 0.0;
  double mu_var_ = 1.0;
  double sigma2_shape_ = 1.0;
  double sigma2_scale_ = 1.0;
  bool degenerate_ = false;
  double fixed_c_ = 1.0;
};

/// Free-function views of the model operations.
inline double population_sample(const LocationScaleModel& model,
                                const Theta& theta, RngStream& rng) {
  return model.sample(theta, rng);
}
inline double log_density(const LocationScaleModel& model, const Theta& theta,
                          double x) {
  return model.log_density(theta, x);
}
inline std::array<double, 2> grad_log_density(const LocationScaleModel& model,
                                              const Theta& theta, double x) {
  return model.grad_log_density(theta, x);
}
inline Theta prior_sample(const Prior& prior, RngStream& rng) {
  return prior.sample(rng);
}
inline double prior_log_density(const Prior& prior, const Theta& theta) {
  return prior.log_density(theta);
}

}  // namespace dpsmc

#endif  // DPSMC_MODEL_HPP
