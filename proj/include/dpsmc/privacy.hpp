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

#ifndef DPSMC_PRIVACY_HPP
#define DPSMC_PRIVACY_HPP

#include <cstddef>
#include <string>

#include "dpsmc/rng.hpp"

namespace dpsmc {

/// A truncation interval [l, r] with l strictly below r. A degenerate
/// interval (l == r) is rejected at construction: a constant statistic has
/// zero sensitivity and would also zero out the calibrated noise.
class TruncationInterval {
 public:
  TruncationInterval(double l, double r);

  double l() const { return l_; }
  double r() const { return r_; }
  double width() const { return r_ - l_; }

  /// min(max(x, l), r).
  double clamp(double x) const { return x < l_ ? l_ : (x > r_ ? r_ : x); }

 private:
  double l_;
  double r_;
};

/// Privacy level of one record release. delta is fixed to zero throughout:
/// only the Laplace mechanism is provided.
struct PrivacyParams {
  explicit PrivacyParams(double eps);
  double epsilon;
};

/// One privatized observation: the released value y, the interval it was
/// truncated to, and the privacy level it was generated under.
struct ReleaseRecord {
  std::size_t t;  // 1-based record index
  double y;
  TruncationInterval interval;
  double epsilon;
};

/// Clamps x into the interval.
double truncate(double x, const TruncationInterval& iv);

/// L1 sensitivity of the truncation statistic: the interval width.
double sensitivity(const TruncationInterval& iv);

/// log pdf of the Laplace distribution with location 0 and the given scale.
/// Throws std::invalid_argument for a nonpositive scale.
double laplace_log_density(double v, double scale);

/// Releases one record: y = clamp(x) + width * V with V ~ Laplace(1/eps).
/// The released value is not re-clamped; it may fall outside the interval.
ReleaseRecord release(double x, const TruncationInterval& iv, double eps,
                      std::size_t t, RngStream& rng);

/// log p(y | x) - log p(y | x') for the single-record release density. Its
/// absolute value is bounded by eps for all inputs; this is the record-level
/// privacy certificate.
double dp_log_ratio_bound(double x, double x_prime, double y,
                          const TruncationInterval& iv, double eps);

std::string release_record_csv_header();
std::string release_record_csv_row(const ReleaseRecord& rec);

}  // namespace dpsmc

#endif  // DPSMC_PRIVACY_HPP
