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

#include "lodnls/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lodnls/error.hpp"

namespace lodnls {

Nonlinearity Nonlinearity::power(double p, int sign) {
  require(std::isfinite(p) && p > 1.0, ErrorCode::kInvalidArgument,
          "nonlinearity exponent must be > 1, got " + std::to_string(p));
  require(sign == 1 || sign == -1, ErrorCode::kInvalidArgument,
          "nonlinearity sign must be +1 or -1");
  Nonlinearity nl;
  nl.enabled_ = true;
  nl.p_ = p;
  nl.sign_ = sign;
  return nl;
}

Nonlinearity Nonlinearity::none() { return Nonlinearity{}; }

double Nonlinearity::f(double s) const {
  if (!enabled_) return 0.0;
  if (p_ == 3.0) return sign_ * s;
  return sign_ * std::pow(s, 0.5 * (p_ - 1.0));
}

double Nonlinearity::F(double s) const {
  if (!enabled_) return 0.0;
  if (p_ == 3.0) return sign_ * 0.5 * s * s;
  return sign_ * (2.0 / (p_ + 1.0)) * std::pow(s, 0.5 * (p_ + 1.0));
}

double f_tilde(double x, double y, const Nonlinearity& nl) {
  require(x >= 0.0 && y >= 0.0, ErrorCode::kInvalidArgument,
          "f_tilde: arguments must be nonnegative");
  if (!nl.enabled()) return 0.0;
  if (nl.is_cubic()) return nl.sign() * 0.5 * (x + y);
  if (std::abs(x - y) < 1e-12 * std::max({1.0, x, y})) return nl.f(0.5 * (x + y));
  return (nl.F(x) - nl.F(y)) / (x - y);
}

}  // namespace lodnls
