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

#include "lodnls/quadrature.hpp"

namespace lodnls {

namespace {

QuadratureRule make_degree2() {
  QuadratureRule r;
  r.degree = 2;
  const double a = 2.0 / 3.0;
  const double b = 1.0 / 6.0;
  r.barycentric = {{a, b, b}, {b, a, b}, {b, b, a}};
  r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return r;
}

// Dunavant (1985), 6 points.
QuadratureRule make_degree4() {
  QuadratureRule r;
  r.degree = 4;
  const double a1 = 0.445948490915964886318329253883050;
  const double w1 = 0.223381589678011465694987008433118;
  const double a2 = 0.091576213509770743459571463402202;
  const double w2 = 0.109951743655321867638346324900215;
  const double b1 = 1.0 - 2.0 * a1;
  const double b2 = 1.0 - 2.0 * a2;
  r.barycentric = {{b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1},
                   {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
  r.weights = {w1, w1, w1, w2, w2, w2};
  return r;
}

}  // namespace

const QuadratureRule& QuadratureRule::degree2() {
  static const QuadratureRule rule = make_degree2();
  return rule;
}

const QuadratureRule& QuadratureRule::degree4() {
  static const QuadratureRule rule = make_degree4();
  return rule;
}

}  // namespace lodnls
