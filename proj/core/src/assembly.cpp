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

#include "lodnls/assembly.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "lodnls/error.hpp"

namespace lodnls {

std::array<std::array<double, 2>, 3> barycentric_gradients(const Mesh& mesh, int e) {
  const auto& t = mesh.element(e);
  const Point& p0 = mesh.node(t[0]);
  const Point& p1 = mesh.node(t[1]);
  const Point& p2 = mesh.node(t[2]);
  const double j11 = p1.x - p0.x, j12 = p2.x - p0.x;
  const double j21 = p1.y - p0.y, j22 = p2.y - p0.y;
  const double det = j11 * j22 - j12 * j21;
  // Rows of J^{-1} are the gradients of lambda_1 and lambda_2.
  const std::array<double, 2> g1{j22 / det, -j12 / det};
  const std::array<double, 2> g2{-j21 / det, j11 / det};
  return {{{-g1[0] - g2[0], -g1[1] - g2[1]}, g1, g2}};
}

const QuadratureRule& rule_for(const CoefficientField& field) {
  return field.is_constant() ? QuadratureRule::degree2() : QuadratureRule::degree4();
}

namespace {

Point map_point(const Mesh& mesh, const Triangle& t, const std::array<double, 3>& bary) {
  const Point& a = mesh.node(t[0]);
  const Point& b = mesh.node(t[1]);
  const Point& c = mesh.node(t[2]);
  return {bary[0] * a.x + bary[1] * b.x + bary[2] * c.x,
          bary[0] * a.y + bary[1] * b.y + bary[2] * c.y};
}

SparseMatrix assemble(const Mesh& mesh, const ExecutionPolicy& policy,
                      const std::function<LocalMatrix(int)>& local) {
  const int ne = mesh.num_elements();
  std::vector<LocalMatrix> locals(ne);
  parallel_for(ne, policy, [&](std::size_t e) { locals[e] = local(static_cast<int>(e)); });
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(ne) * 9);
  for (int e = 0; e < ne; ++e) {
    const auto& t = mesh.element(e);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) triplets.emplace_back(t[a], t[b], locals[e][a][b]);
    }
  }
  SparseMatrix m(mesh.num_nodes(), mesh.num_nodes());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

LocalMatrix local_mass(const Mesh& mesh, int e, const CoefficientField& weight) {
  const double area = std::abs(mesh.signed_area(e));
  LocalMatrix m{};
  if (weight.is_constant()) {
    const double c = weight.constant_value() * area / 12.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m[a][b] = (a == b ? 2.0 : 1.0) * c;
    }
    return m;
  }
  const auto& t = mesh.element(e);
  const QuadratureRule& rule = rule_for(weight);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto& l = rule.barycentric[q];
    const Point p = map_point(mesh, t, l);
    const double w = rule.weights[q] * area * weight(p.x, p.y);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m[a][b] += w * l[a] * l[b];
    }
  }
  return m;
}

LocalMatrix local_stiffness(const Mesh& mesh, int e, const CoefficientField& b) {
  const double area = std::abs(mesh.signed_area(e));
  double integral = 0.0;
  if (b.is_constant()) {
    require(b.constant_value() > 0.0, ErrorCode::kCoefficientViolation,
            "diffusion coefficient must be positive");
    integral = b.constant_value() * area;
  } else {
    const auto& t = mesh.element(e);
    const QuadratureRule& rule = rule_for(b);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point p = map_point(mesh, t, rule.barycentric[q]);
      const double v = b(p.x, p.y);
      if (!(v > 0.0)) {
        throw_error(ErrorCode::kCoefficientViolation,
                    "diffusion coefficient " + std::to_string(v) + " at (" + std::to_string(p.x) +
                        ", " + std::to_string(p.y) + ") is not positive");
      }
      integral += rule.weights[q] * area * v;
    }
  }
  const auto g = barycentric_gradients(mesh, e);
  LocalMatrix k{};
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 3; ++c) k[a][c] = integral * (g[a][0] * g[c][0] + g[a][1] * g[c][1]);
  }
  return k;
}

SparseMatrix assemble_mass(const Mesh& mesh, const ExecutionPolicy& policy) {
  return assemble_mass(mesh, CoefficientField::constant(1.0), policy);
}

SparseMatrix assemble_mass(const Mesh& mesh, const CoefficientField& weight,
                           const ExecutionPolicy& policy) {
  return assemble(mesh, policy, [&](int e) { return local_mass(mesh, e, weight); });
}

SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientField& b,
                                const ExecutionPolicy& policy) {
  return assemble(mesh, policy, [&](int e) { return local_stiffness(mesh, e, b); });
}

SparseMatrix restrict_to_interior(const SparseMatrix& full, const Mesh& mesh) {
  require(full.rows() == mesh.num_nodes() && full.cols() == mesh.num_nodes(),
          ErrorCode::kDimensionMismatch, "matrix does not match mesh");
  const int n = mesh.num_interior_nodes();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(full.nonZeros());
  for (int r = 0; r < n; ++r) {
    const int node = mesh.interior_nodes()[r];
    for (SparseMatrix::InnerIterator it(full, node); it; ++it) {
      const int c = mesh.interior_index(static_cast<int>(it.col()));
      if (c >= 0) triplets.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

namespace {

template <class Vec>
Vec expand(const Mesh& mesh, const Vec& interior) {
  require(interior.size() == mesh.num_interior_nodes(), ErrorCode::kDimensionMismatch,
          "interior vector has wrong length");
  Vec full = Vec::Zero(mesh.num_nodes());
  for (int k = 0; k < mesh.num_interior_nodes(); ++k) full[mesh.interior_nodes()[k]] = interior[k];
  return full;
}

template <class Vec>
Vec restrict_vec(const Mesh& mesh, const Vec& full) {
  require(full.size() == mesh.num_nodes(), ErrorCode::kDimensionMismatch,
          "nodal vector has wrong length");
  Vec interior(mesh.num_interior_nodes());
  for (int k = 0; k < mesh.num_interior_nodes(); ++k) interior[k] = full[mesh.interior_nodes()[k]];
  return interior;
}

}  // namespace

ComplexVector expand_interior(const Mesh& mesh, const ComplexVector& interior) {
  return expand(mesh, interior);
}
Vector expand_interior(const Mesh& mesh, const Vector& interior) { return expand(mesh, interior); }
ComplexVector restrict_interior(const Mesh& mesh, const ComplexVector& full) {
  return restrict_vec(mesh, full);
}
Vector restrict_interior(const Mesh& mesh, const Vector& full) { return restrict_vec(mesh, full); }

double symmetry_defect(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  const SparseMatrix d = a - at;
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  out.precision(17);
  for (int r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      out << r + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace lodnls
