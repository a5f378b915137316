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
#include <functional>
#include <string_view>

#include "lodnls/mesh.hpp"
#include "lodnls/types.hpp"

namespace lodnls {

enum class NormKind { kL2, kL4, kH1Semi, kH1 };

/// Throws kInvalidArgument on anything but L2, L4, H1-semi, H1.
NormKind parse_norm_kind(std::string_view name);
std::string_view to_string(NormKind kind);

/// Complex-valued function of (x, y), with an optional gradient.
struct AnalyticFunction {
  std::function<Complex(double, double)> value;
  std::function<std::array<Complex, 2>(double, double)> gradient;
};

/// Nodal interpolant on all nodes.
ComplexVector interpolate(const Mesh& mesh, const AnalyticFunction& f);

/// Norm of a P1 function given by all-node values, evaluated with the
/// degree-4 rule on every element. With `exact`, measures u_h - exact
/// (H1 kinds require exact.gradient).
double norm(const Mesh& mesh, const ComplexVector& nodal, NormKind kind,
            const AnalyticFunction* exact = nullptr);
double norm(const Mesh& mesh, const Vector& nodal, NormKind kind,
            const AnalyticFunction* exact = nullptr);

/// L2, L4 and H1 (full) norms in one sweep.
struct NormTriple {
  double l2 = 0.0;
  double l4 = 0.0;
  double h1 = 0.0;
};
NormTriple norms(const Mesh& mesh, const ComplexVector& nodal,
                 const AnalyticFunction* exact = nullptr);

/// (f, lambda_i) for every node by degree-4 quadrature.
ComplexVector load_vector(const Mesh& mesh, const AnalyticFunction& f);

}  // namespace lodnls
