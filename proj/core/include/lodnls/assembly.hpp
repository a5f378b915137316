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
#include <iosfwd>
#include <span>

#include "lodnls/coefficient.hpp"
#include "lodnls/mesh.hpp"
#include "lodnls/quadrature.hpp"
#include "lodnls/types.hpp"
#include "lodnls/util.hpp"

namespace lodnls {

using LocalMatrix = std::array<std::array<double, 3>, 3>;

/// Gradients of the three barycentric coordinates of element e.
std::array<std::array<double, 2>, 3> barycentric_gradients(const Mesh& mesh, int e);

/// Quadrature rule for a coefficient: degree 2 when constant, else degree 4.
const QuadratureRule& rule_for(const CoefficientField& field);

/// int_e w * lambda_i * lambda_j. A constant weight uses the closed form.
LocalMatrix local_mass(const Mesh& mesh, int e, const CoefficientField& weight);
/// int_e b * grad lambda_i . grad lambda_j. Throws kCoefficientViolation on b <= 0.
LocalMatrix local_stiffness(const Mesh& mesh, int e, const CoefficientField& b);

/// Full (all nodes) matrices over the mesh. Elements are processed in
/// parallel; entries are summed in element order, so output is deterministic.
SparseMatrix assemble_mass(const Mesh& mesh, const ExecutionPolicy& policy = {});
SparseMatrix assemble_mass(const Mesh& mesh, const CoefficientField& weight,
                           const ExecutionPolicy& policy = {});
SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientField& b,
                                const ExecutionPolicy& policy = {});

/// Rows and columns of the interior nodes (Dirichlet elimination).
SparseMatrix restrict_to_interior(const SparseMatrix& full, const Mesh& mesh);

/// Interior-node vector <-> all-node vector with zero boundary values.
ComplexVector expand_interior(const Mesh& mesh, const ComplexVector& interior);
Vector expand_interior(const Mesh& mesh, const Vector& interior);
ComplexVector restrict_interior(const Mesh& mesh, const ComplexVector& full);
Vector restrict_interior(const Mesh& mesh, const Vector& full);

/// Max |A - A^T| over all entries.
double symmetry_defect(const SparseMatrix& a);

void write_matrix_market(std::ostream& out, const SparseMatrix& a);

}  // namespace lodnls
