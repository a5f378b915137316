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

#pragma once

namespace lodnls {

/// Power nonlinearity f(s) = sign * s^((p-1)/2) with potential
/// F(s) = sign * 2/(p+1) * s^((p+1)/2), or the linear mode f = F = 0.
class Nonlinearity {
 public:
  /// Requires p > 1 and sign in {+1, -1}.
  static Nonlinearity power(double p, int sign = +1);
  /// p = 3, f(s) = s, F(s) = s^2 / 2.
  static Nonlinearity cubic(int sign = +1) { return power(3.0, sign); }
  /// f = F = 0: the scheme becomes linear.
  static Nonlinearity none();

  bool enabled() const { return enabled_; }
  bool is_cubic() const { return enabled_ && p_ == 3.0; }
  double exponent() const { return p_; }
  int sign() const { return sign_; }

  double f(double s) const;
  double F(double s) const;

 private:
  bool enabled_ = false;
  double p_ = 3.0;
  int sign_ = +1;
};

/// Divided difference (F(x) - F(y)) / (x - y) for x, y >= 0, equal to f(x)
/// on the diagonal. Closed form (x + y) / 2 (times sign) for the cubic case;
/// otherwise f((x + y) / 2) once |x - y| < 1e-12 max(1, x, y).
/// Throws kInvalidArgument on negative input.
double f_tilde(double x, double y, const Nonlinearity& nl);

}  // namespace lodnls
