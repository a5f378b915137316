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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lodnls/mesh.hpp"
#include "lodnls/problem.hpp"
#include "lodnls/quadrature.hpp"

namespace lodnls::testing {

/// max over sine test functions v_kl of
///   | int (u_tt + i u_t + V u + f(|u|^2) u) v + b grad u . grad v |
/// at time t, by degree-4 quadrature on an n x n mesh. u_tt comes from a
/// central difference of the exact time derivative.
inline double weak_form_residual(const ProblemSpec& problem, double t, int n = 64) {
  const ExactSolution& exact = *problem.exact;
  const Mesh mesh = Mesh::structured(n);
  const QuadratureRule& rule = QuadratureRule::degree4();
  const double dt = 1e-5;
  const double pi = std::numbers::pi;
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int l = 1; l <= 3; ++l) {
      Complex acc = 0.0;
      for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& tri = mesh.element(e);
        const double area = mesh.signed_area(e);
        for (std::size_t q = 0; q < rule.size(); ++q) {
          double x = 0.0;
          double y = 0.0;
          for (int j = 0; j < 3; ++j) {
            x += rule.barycentric[q][j] * mesh.node(tri[j]).x;
            y += rule.barycentric[q][j] * mesh.node(tri[j]).y;
          }
          const Complex u = exact.value(x, y, t);
          const auto g = exact.gradient(x, y, t);
          const Complex ut = exact.time_derivative(x, y, t);
          const Complex utt =
              (exact.time_derivative(x, y, t + dt) - exact.time_derivative(x, y, t - dt)) / (2 * dt);
          const double v = std::sin(k * pi * x) * std::sin(l * pi * y);
          const double vx = k * pi * std::cos(k * pi * x) * std::sin(l * pi * y);
          const double vy = l * pi * std::sin(k * pi * x) * std::cos(l * pi * y);
          const Complex strong = utt + Complex(0.0, 1.0) * ut + problem.V(x, y) * u +
                                 problem.nonlinearity.f(std::norm(u)) * u;
          acc += area * rule.weights[q] * (strong * v + problem.b(x, y) * (g[0] * vx + g[1] * vy));
        }
      }
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace lodnls::testing
