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

#include "dpsmc/rng.hpp"

#include <doctest.h>

#include <vector>

#include "oracles.hpp"

using dpsmc::RngStream;

TEST_SUITE("rng") {

TEST_CASE("child derivation is independent of parent consumption") {
  RngStream a = RngStream::root(42);
  RngStream b = RngStream::root(42);
  for (int i = 0; i < 100; ++i) b.next_u64();  // consume b only

  RngStream ca = a.child("tag", 3, 7);
  RngStream cb = b.child("tag", 3, 7);
  for (int i = 0; i < 16; ++i) CHECK(ca.next_u64() == cb.next_u64());
}

TEST_CASE("distinct tags and indices give distinct streams") {
  RngStream root = RngStream::root(1);
  CHECK(root.child("a").key() != root.child("b").key());
  CHECK(root.child("a", 0).key() != root.child("a", 1).key());
  CHECK(root.child("a", 0, 0).key() != root.child("a", 0, 1).key());
}

TEST_CASE("same key reproduces the same sequence") {
  RngStream a = RngStream::root(7).child("x", 5);
  RngStream b = RngStream::root(7).child("x", 5);
  for (int i = 0; i < 8; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("uniform01 lies in (0, 1] and has mean 1/2") {
  RngStream rng = RngStream::root(3).child("u");
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal draws pass a KS test against the standard normal") {
  RngStream rng = RngStream::root(11).child("n");
  std::vector<double> xs(10000);
  for (double& x : xs) x = rng.normal();
  const double d = oracles::ks_statistic(
      xs, [](double x) { return oracles::normal_cdf(x); });
  CHECK(d < oracles::ks_critical_1pct(xs.size()));
}

TEST_CASE("laplace draws have the right moments") {
  RngStream rng = RngStream::root(13).child("lap");
  const double scale = 2.0;
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.laplace(scale);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(0.0).epsilon(0.0));
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(2.0 * scale * scale).epsilon(0.03));
}

TEST_CASE("gamma draws match mean and variance") {
  RngStream rng = RngStream::root(17).child("g");
  for (double shape : {0.5, 1.0, 3.7}) {
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = rng.gamma(shape);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.02));
    CHECK(var == doctest::Approx(shape).epsilon(0.05));
  }
}

TEST_CASE("inverse gamma draws pass a KS test against the analytic CDF") {
  RngStream rng = RngStream::root(19).child("ig");
  const double shape = 2.5, scale = 1.5;
  std::vector<double> xs(10000);
  for (double& x : xs) x = rng.inverse_gamma(shape, scale);
  const double d = oracles::ks_statistic(xs, [&](double x) {
    return oracles::inverse_gamma_cdf(x, shape, scale);
  });
  CHECK(d < oracles::ks_critical_1pct(xs.size()));
}

}  // TEST_SUITE
