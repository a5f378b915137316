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

#include <array>
#include <vector>

namespace lodnls {

/// Symmetric rule on the reference triangle, weights normalized to sum 1
/// (multiply by the element area).
struct QuadratureRule {
  std::vector<std::array<double, 3>> barycentric;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }

  /// 3-point rule, exact for quadratics.
  static const QuadratureRule& degree2();
  /// 6-point Dunavant rule, exact for quartics.
  static const QuadratureRule& degree4();
};

}  // namespace lodnls
