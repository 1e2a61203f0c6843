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

#include "dpsmc/fisher.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpsmc/parallel.hpp"

namespace dpsmc {

ScoreFunction ScoreFunction::trace() {
  ScoreFunction sc;
  sc.kind_ = Kind::kTrace;
  return sc;
}

ScoreFunction ScoreFunction::entry(int i, int j) {
  if (i < 1 || i > 2 || j < 1 || j > 2) {
    throw std::invalid_argument("ScoreFunction::entry indices must be in {1, 2}");
  }
  ScoreFunction sc;
  sc.kind_ = Kind::kEntry;
  sc.i_ = i - 1;
  sc.j_ = j - 1;
  return sc;
}

ScoreFunction ScoreFunction::weighted_diag(double w1, double w2) {
  if (!(w1 >= 0.0) || !(w2 >= 0.0)) {
    throw std::invalid_argument("ScoreFunction::weighted_diag weights must be >= 0");
  }
  ScoreFunction sc;
  sc.kind_ = Kind::kWeightedDiag;
  sc.w1_ = w1;
  sc.w2_ = w2;
  return sc;
}

double ScoreFunction::apply(double mm, double mc, double cc) const {
  switch (kind_) {
    case Kind::kTrace:
      return mm + cc;
    case Kind::kEntry:
      if (i_ == 0 && j_ == 0) return mm;
      if (i_ == 1 && j_ == 1) return cc;
      return mc;
    case Kind::kWeightedDiag:
      return w1_ * mm + w2_ * cc;
  }
  return 0.0;
}

ScoreEstimate score_estimate(const LocationScaleModel& model,
                             const Theta& theta, double y,
                             const TruncationInterval& iv, double eps,
                             std::size_t inner_samples, RngStream& rng) {
  PrivacyParams params(eps);
  if (inner_samples < 2) {
    throw std::invalid_argument("score_estimate requires inner_samples >= 2");
  }
  const double scale = iv.width() / params.epsilon;

  // Streaming self-normalized sums with a running max shift, so the result is
  // exactly invariant to rescaling all weights by a positive constant.
  double max_lw = -std::numeric_limits<double>::infinity();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < inner_samples; ++i) {
    const double x = model.sample(theta, rng);
    const double lw = -std::abs(y - iv.clamp(x)) / scale;
    const auto g = model.grad_log_density(theta, x);
    if (lw > max_lw) {
      const double shrink =
          std::isfinite(max_lw) ? std::exp(max_lw - lw) : 0.0;
      s0 *= shrink;
      s1 *= shrink;
      s2 *= shrink;
      max_lw = lw;
    }
    const double w = std::exp(lw - max_lw);
    s0 += w;
    s1 += w * g[0];
    s2 += w * g[1];
  }

  ScoreEstimate est;
  if (!(s0 > 0.0) || !std::isfinite(s0)) {
    est.degenerate = true;
    return est;
  }
  est.value = {s1 / s0, s2 / s0};
  return est;
}

namespace detail {

void fim_terms(const LocationScaleModel& model, const Theta& theta,
               const TruncationInterval& iv, double eps, const FimConfig& cfg,
               RngStream& rng, unsigned threads, std::vector<double>& mm,
               std::vector<double>& mc, std::vector<double>& cc,
               std::size_t& degenerate_count) {
  if (cfg.outer_samples < 1) {
    throw std::invalid_argument("fim_estimate requires outer_samples >= 1");
  }
  const std::size_t m = cfg.outer_samples;
  mm.resize(m);
  mc.resize(m);
  cc.resize(m);
  std::atomic<std::size_t> degenerate{0};
  parallel_for(m, threads, [&](std::size_t j) {
    RngStream ystream = rng.child("fim_y", j);
    const double x = model.sample(theta, ystream);
    const double y = iv.clamp(x) + iv.width() * ystream.laplace(1.0 / eps);
    RngStream gstream = rng.child("fim_grad", j);
    const ScoreEstimate g = score_estimate(model, theta, y, iv, eps,
                                           cfg.inner_samples, gstream);
    if (g.degenerate) degenerate.fetch_add(1, std::memory_order_relaxed);
    mm[j] = g.value[0] * g.value[0];
    mc[j] = g.value[0] * g.value[1];
    cc[j] = g.value[1] * g.value[1];
  });
  degenerate_count = degenerate.load();
}

void tree_mean_se(const std::vector<double>& terms, double& mean, double& se) {
  const std::size_t m = terms.size();
  mean = pairwise_sum(terms.data(), m) / static_cast<double>(m);
  if (m < 2) {
    se = 0.0;
    return;
  }
  std::vector<double> sq(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double d = terms[j] - mean;
    sq[j] = d * d;
  }
  const double var = pairwise_sum(sq.data(), m) /
                     (static_cast<double>(m) * static_cast<double>(m - 1));
  se = std::sqrt(var);
}

}  // namespace detail

FimEstimate fim_estimate(const LocationScaleModel& model, const Theta& theta,
                         const TruncationInterval& iv, double eps,
                         const FimConfig& cfg, RngStream& rng,
                         unsigned threads) {
  std::vector<double> mm, mc, cc;
  FimEstimate est;
  detail::fim_terms(model, theta, iv, eps, cfg, rng, threads, mm, mc, cc,
                    est.degenerate_count);
  detail::tree_mean_se(mm, est.value.mm, est.std_error.mm);
  detail::tree_mean_se(mc, est.value.mc, est.std_error.mc);
  detail::tree_mean_se(cc, est.value.cc, est.std_error.cc);
  return est;
}

}  // namespace dpsmc
