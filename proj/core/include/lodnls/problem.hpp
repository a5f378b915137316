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

#include <optional>
#include <string>

#include "lodnls/coefficient.hpp"
#include "lodnls/nonlinearity.hpp"
#include "lodnls/norms.hpp"

namespace lodnls {

/// Exact solution u(x, y, t) with its spatial gradient, when known.
struct ExactSolution {
  std::function<Complex(double, double, double)> value;
  std::function<std::array<Complex, 2>(double, double, double)> gradient;
  std::function<Complex(double, double, double)> time_derivative;

  /// Snapshot at time t as an AnalyticFunction.
  AnalyticFunction at(double t) const;
  AnalyticFunction time_derivative_at(double t) const;
};

/// u_tt + i u_t - div(b grad u) + V u + f(|u|^2) u = 0 on the unit square,
/// homogeneous Dirichlet data, u(0) = u0, u_t(0) = u1.
struct ProblemSpec {
  int example_id = 0;
  std::string name;
  CoefficientField b = CoefficientField::constant(1.0);
  CoefficientField V = CoefficientField::constant(0.0);
  Nonlinearity nonlinearity = Nonlinearity::cubic();
  AnalyticFunction u0;
  AnalyticFunction u1;
  std::optional<ExactSolution> exact;
  double final_time = 1.0;
};

}  // namespace lodnls
