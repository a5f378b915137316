// Copyright 2026 The lodnls Authors
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
#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lodnls/error.hpp"
#include "lodnls/nonlinearity.hpp"

namespace lodnls {
namespace {

TEST(Nonlinearity, CubicValues) {
  const auto nl = Nonlinearity::cubic();
  EXPECT_TRUE(nl.is_cubic());
  EXPECT_DOUBLE_EQ(nl.f(2.0), 2.0);
  EXPECT_DOUBLE_EQ(nl.F(2.0), 2.0);
  EXPECT_DOUBLE_EQ(f_tilde(2.0, 4.0, nl), 3.0);
  EXPECT_DOUBLE_EQ(f_tilde(2.0, 4.0, Nonlinearity::cubic(-1)), -3.0);
}

TEST(Nonlinearity, PowerDividedDifference) {
  const auto nl = Nonlinearity::power(2.0);
  // F(s) = 2/3 s^(3/2).
  EXPECT_NEAR(f_tilde(1.0, 0.0, nl), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(f_tilde(0.7, 0.7, nl), nl.f(0.7), 1e-15);
}

TEST(Nonlinearity, LinearModeIsZero) {
  const auto nl = Nonlinearity::none();
  EXPECT_FALSE(nl.enabled());
  EXPECT_EQ(nl.f(3.0), 0.0);
  EXPECT_EQ(nl.F(3.0), 0.0);
  EXPECT_EQ(f_tilde(1.0, 2.0, nl), 0.0);
}

TEST(Nonlinearity, InvalidArguments) {
  EXPECT_THROW(Nonlinearity::power(1.0), Error);
  EXPECT_THROW(Nonlinearity::power(3.0, 2), Error);
  EXPECT_THROW(f_tilde(-1.0, 0.5, Nonlinearity::cubic()), Error);
  EXPECT_THROW(f_tilde(0.5, -1e-3, Nonlinearity::power(2.5)), Error);
}

TEST(Nonlinearity, PotentialDerivativeIsF) {
  for (double p : {2.0, 3.0, 4.5, 7.0}) {
    const auto nl = Nonlinearity::power(p);
    for (double s : {0.1, 0.5, 1.0, 2.0}) {
      const double h = 1e-6;
      const double derivative = (nl.F(s + h) - nl.F(s - h)) / (2 * h);
      EXPECT_NEAR(derivative, nl.f(s), 1e-8 * std::max(1.0, nl.f(s))) << "p=" << p << " s=" << s;
    }
  }
}

class DividedDifference : public ::testing::TestWithParam<double> {};

TEST_P(DividedDifference, SymmetryAndConsistencyOnRandomPairs) {
  const auto nl = Nonlinearity::power(GetParam());
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  for (int k = 0; k < 10000; ++k) {
    const double x = dist(rng);
    const double y = (k % 10 == 0) ? x * (1.0 + 1e-14) : dist(rng);
    const double ft = f_tilde(x, y, nl);
    EXPECT_EQ(ft, f_tilde(y, x, nl));
    const double scale = std::max({1.0, std::abs(nl.F(x)), std::abs(nl.F(y))});
    EXPECT_LE(std::abs(ft * (x - y) - (nl.F(x) - nl.F(y))), 1e-12 * scale);
    EXPECT_NEAR(f_tilde(x, x, nl), nl.f(x), 1e-15 * std::max(1.0, nl.f(x)));
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, DividedDifference, ::testing::Values(2.0, 3.0, 5.0, 6.5));

}  // namespace
}  // namespace lodnls
