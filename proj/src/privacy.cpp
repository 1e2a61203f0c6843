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

#include "dpsmc/privacy.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dpsmc {

TruncationInterval::TruncationInterval(double l, double r) : l_(l), r_(r) {
  if (!(l < r) || !std::isfinite(l) || !std::isfinite(r)) {
    throw std::invalid_argument("TruncationInterval requires finite l < r");
  }
}

PrivacyParams::PrivacyParams(double eps) : epsilon(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("PrivacyParams requires epsilon > 0");
  }
}

double truncate(double x, const TruncationInterval& iv) { return iv.clamp(x); }

double sensitivity(const TruncationInterval& iv) { return iv.width(); }

double laplace_log_density(double v, double scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("laplace_log_density requires scale > 0");
  }
  return -std::log(2.0 * scale) - std::abs(v) / scale;
}

ReleaseRecord release(double x, const TruncationInterval& iv, double eps,
                      std::size_t t, RngStream& rng) {
  PrivacyParams params(eps);
  const double noise = rng.laplace(1.0 / params.epsilon);
  return ReleaseRecord{t, iv.clamp(x) + iv.width() * noise, iv, params.epsilon};
}

double dp_log_ratio_bound(double x, double x_prime, double y,
                          const TruncationInterval& iv, double eps) {
  PrivacyParams params(eps);
  const double scale = iv.width() / params.epsilon;
  return (std::abs(y - iv.clamp(x_prime)) - std::abs(y - iv.clamp(x))) / scale;
}

std::string release_record_csv_header() { return "t,y,l,r,epsilon"; }

std::string release_record_csv_row(const ReleaseRecord& rec) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g", rec.t, rec.y,
                rec.interval.l(), rec.interval.r(), rec.epsilon);
  return buf;
}

}  // namespace dpsmc
