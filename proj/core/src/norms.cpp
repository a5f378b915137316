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

#include "lodnls/norms.hpp"

#include <cmath>
#include <string>

#include "lodnls/assembly.hpp"
#include "lodnls/error.hpp"
#include "lodnls/quadrature.hpp"

namespace lodnls {

NormKind parse_norm_kind(std::string_view name) {
  if (name == "L2") return NormKind::kL2;
  if (name == "L4") return NormKind::kL4;
  if (name == "H1-semi" || name == "H1semi") return NormKind::kH1Semi;
  if (name == "H1") return NormKind::kH1;
  throw_error(ErrorCode::kInvalidArgument, "unknown norm kind '" + std::string(name) + "'");
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kL2: return "L2";
    case NormKind::kL4: return "L4";
    case NormKind::kH1Semi: return "H1-semi";
    case NormKind::kH1: return "H1";
  }
  return "?";
}

ComplexVector interpolate(const Mesh& mesh, const AnalyticFunction& f) {
  ComplexVector out(mesh.num_nodes());
  for (int v = 0; v < mesh.num_nodes(); ++v) out[v] = f.value(mesh.node(v).x, mesh.node(v).y);
  return out;
}

namespace {

struct Integrals {
  double l2 = 0.0;    // int |d|^2
  double l4 = 0.0;    // int |d|^4
  double semi = 0.0;  // int |grad d|^2
};

Integrals integrate(const Mesh& mesh, const ComplexVector& nodal, const AnalyticFunction* exact,
                    bool need_gradient) {
  require(nodal.size() == mesh.num_nodes(), ErrorCode::kDimensionMismatch,
          "norm: nodal vector has wrong length");
  if (need_gradient && exact != nullptr) {
    require(static_cast<bool>(exact->gradient), ErrorCode::kInvalidArgument,
            "H1 error norms need the exact gradient");
  }
  const QuadratureRule& rule = QuadratureRule::degree4();
  Integrals acc;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& t = mesh.element(e);
    const double area = std::abs(mesh.signed_area(e));
    const Complex u0 = nodal[t[0]], u1 = nodal[t[1]], u2 = nodal[t[2]];
    std::array<Complex, 2> grad{};
    if (need_gradient) {
      const auto g = barycentric_gradients(mesh, e);
      for (int d = 0; d < 2; ++d) grad[d] = u0 * g[0][d] + u1 * g[1][d] + u2 * g[2][d];
    }
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& l = rule.barycentric[q];
      const double w = rule.weights[q] * area;
      Complex d = l[0] * u0 + l[1] * u1 + l[2] * u2;
      std::array<Complex, 2> dg = grad;
      if (exact != nullptr) {
        const Point& a = mesh.node(t[0]);
        const Point& b = mesh.node(t[1]);
        const Point& c = mesh.node(t[2]);
        const double x = l[0] * a.x + l[1] * b.x + l[2] * c.x;
        const double y = l[0] * a.y + l[1] * b.y + l[2] * c.y;
        d -= exact->value(x, y);
        if (need_gradient) {
          const auto eg = exact->gradient(x, y);
          dg[0] -= eg[0];
          dg[1] -= eg[1];
        }
      }
      const double d2 = std::norm(d);
      acc.l2 += w * d2;
      acc.l4 += w * d2 * d2;
      if (need_gradient) acc.semi += w * (std::norm(dg[0]) + std::norm(dg[1]));
    }
  }
  return acc;
}

}  // namespace

double norm(const Mesh& mesh, const ComplexVector& nodal, NormKind kind,
            const AnalyticFunction* exact) {
  const bool grad = kind == NormKind::kH1 || kind == NormKind::kH1Semi;
  const Integrals i = integrate(mesh, nodal, exact, grad);
  switch (kind) {
    case NormKind::kL2: return std::sqrt(i.l2);
    case NormKind::kL4: return std::sqrt(std::sqrt(i.l4));
    case NormKind::kH1Semi: return std::sqrt(i.semi);
    case NormKind::kH1: return std::sqrt(i.l2 + i.semi);
  }
  throw_error(ErrorCode::kInvalidArgument, "unknown norm kind");
}

double norm(const Mesh& mesh, const Vector& nodal, NormKind kind, const AnalyticFunction* exact) {
  return norm(mesh, ComplexVector(nodal.cast<Complex>()), kind, exact);
}

NormTriple norms(const Mesh& mesh, const ComplexVector& nodal, const AnalyticFunction* exact) {
  const bool grad = exact == nullptr || static_cast<bool>(exact->gradient);
  const Integrals i = integrate(mesh, nodal, exact, grad);
  return {std::sqrt(i.l2), std::sqrt(std::sqrt(i.l4)),
          grad ? std::sqrt(i.l2 + i.semi) : std::nan("")};
}

ComplexVector load_vector(const Mesh& mesh, const AnalyticFunction& f) {
  const QuadratureRule& rule = QuadratureRule::degree4();
  ComplexVector out = ComplexVector::Zero(mesh.num_nodes());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& t = mesh.element(e);
    const double area = std::abs(mesh.signed_area(e));
    const Point& a = mesh.node(t[0]);
    const Point& b = mesh.node(t[1]);
    const Point& c = mesh.node(t[2]);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& l = rule.barycentric[q];
      const Complex fv = f.value(l[0] * a.x + l[1] * b.x + l[2] * c.x,
                                 l[0] * a.y + l[1] * b.y + l[2] * c.y);
      const Complex w = rule.weights[q] * area * fv;
      for (int k = 0; k < 3; ++k) out[t[k]] += w * l[k];
    }
  }
  return out;
}

}  // namespace lodnls
