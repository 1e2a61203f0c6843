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

// Test-only oracles, written directly from the closed-form definitions and
// kept independent of the library's implementation paths.

#ifndef DPSMC_TESTS_ORACLES_HPP
#define DPSMC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double normal_pdf(double x, double m, double c) {
  const double z = (x - m) / c;
  return std::exp(-0.5 * z * z) / (c * std::sqrt(2.0 * M_PI));
}

inline double normal_cdf(double x, double m = 0.0, double c = 1.0) {
  return 0.5 * std::erfc(-((x - m) / c) / std::sqrt(2.0));
}

/// Regularized upper incomplete gamma Q(a, x) via series / continued
/// fraction.
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    // P(a, x) as a series, return 1 - P.
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 1000; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Q(a, x) as a continued fraction (modified Lentz).
  double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delt = d * c;
    h *= delt;
    if (std::abs(delt - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

/// CDF of InverseGamma(shape, scale) at x > 0.
inline double inverse_gamma_cdf(double x, double shape, double scale) {
  if (x <= 0.0) return 0.0;
  return gamma_q(shape, scale / x);
}

/// Two-sided KS statistic of samples against a CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

/// Asymptotic 1% KS critical value.
inline double ks_critical_1pct(std::size_t n) {
  return 1.6276 / std::sqrt(static_cast<double>(n));
}

/// Marginal density of one released observation under the normal population:
/// point masses at the clamped endpoints plus a trapezoid over the interior
/// (10^4 nodes, integration window capped at m -/+ 8c).
inline double marginal_density_y(double y, double m, double c, double l,
                                 double r, double eps, int nodes = 10000) {
  const double b = (r - l) / eps;
  const auto lap = [&](double v) { return std::exp(-std::abs(v) / b) / (2.0 * b); };
  const double lo = std::max(l, m - 8.0 * c);
  const double hi = std::min(r, m + 8.0 * c);
  double interior = 0.0;
  if (lo < hi) {
    const double step = (hi - lo) / nodes;
    for (int k = 0; k <= nodes; ++k) {
      const double x = lo + step * k;
      const double w = (k == 0 || k == nodes) ? 0.5 : 1.0;
      interior += w * normal_pdf(x, m, c) * lap(y - x);
    }
    interior *= step;
  }
  const double mass = normal_cdf(l, m, c) * lap(y - l) +
                      (1.0 - normal_cdf(r, m, c)) * lap(y - r);
  return mass + interior;
}

inline double log_marginal_y(double y, double m, double c, double l, double r,
                             double eps, int nodes = 10000) {
  return std::log(marginal_density_y(y, m, c, l, r, eps, nodes));
}

/// Central finite differences of the quadrature log marginal in (m, c).
inline std::array<double, 2> score_by_quadrature(double y, double m, double c,
                                                 double l, double r,
                                                 double eps,
                                                 double h = 1e-4) {
  const double dm = (log_marginal_y(y, m + h, c, l, r, eps) -
                     log_marginal_y(y, m - h, c, l, r, eps)) /
                    (2.0 * h);
  const double dc = (log_marginal_y(y, m, c + h, l, r, eps) -
                     log_marginal_y(y, m, c - h, l, r, eps)) /
                    (2.0 * h);
  return {dm, dc};
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace oracles

#endif  // DPSMC_TESTS_ORACLES_HPP
