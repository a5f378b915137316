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

#include <memory>
#include <vector>

#include "lodnls/lod.hpp"
#include "lodnls/nonlinearity.hpp"
#include "lodnls/norms.hpp"
#include "lodnls/operators.hpp"
#include "lodnls/types.hpp"

namespace lodnls {

/// Quadrature-point evaluation of the nonlinear terms on the fine mesh.
/// Inputs are complex values on interior fine nodes.
class NonlinearTerm {
 public:
  explicit NonlinearTerm(std::shared_ptr<const Mesh> mesh);

  /// g_i = int ftilde(|w|^2, |v|^2) ubar lambda_i, for interior fine nodes i.
  ComplexVector load(const ComplexVector& w, const ComplexVector& v, const ComplexVector& ubar,
                     const Nonlinearity& nl, const ExecutionPolicy& policy = {}) const;

  /// int F(|u|^2) with the same rule as load().
  double potential(const ComplexVector& u, const Nonlinearity& nl) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<std::array<int, 3>> dofs_;  ///< interior index per vertex, -1 on boundary
  std::vector<double> areas_;
};

enum class SpaceKind { kLod, kFineFem };

/// Trial/test space of the time integrator: the LOD space or the plain fine
/// P1 space. Matrices are expressed in the space's own coordinates.
class DiscreteSpace {
 public:
  static DiscreteSpace fine_fem(std::shared_ptr<const FineOperators> ops);
  static DiscreteSpace lod(std::shared_ptr<const FineOperators> ops,
                           std::shared_ptr<const LodBasis> basis);

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }

  const SparseMatrix& mass() const { return mass_; }
  const SparseMatrix& stiffness() const { return stiffness_; }
  const SparseMatrix& potential_mass() const { return potential_mass_; }

  const FineOperators& fine() const { return *ops_; }
  const LodBasis* basis() const { return basis_.get(); }
  const NonlinearTerm& nonlinear() const { return *nonlinear_; }

  /// Values on interior fine nodes.
  ComplexVector to_fine(const ComplexVector& x) const;
  /// Fine load vector -> load in space coordinates (B^T g for LOD).
  ComplexVector restrict_load(const ComplexVector& fine_load) const;
  /// Values on all fine nodes (boundary zeros), for norms and dumps.
  ComplexVector to_fine_nodal(const ComplexVector& x) const;

  /// LOD: Ritz projection of the fine interpolant; fine FEM: interpolant.
  ComplexVector initial_value(const AnalyticFunction& u0) const;
  /// L2 projection into the space.
  ComplexVector l2_projection(const AnalyticFunction& f) const;

 private:
  SpaceKind kind_ = SpaceKind::kFineFem;
  int dim_ = 0;
  std::shared_ptr<const FineOperators> ops_;
  std::shared_ptr<const LodBasis> basis_;
  std::shared_ptr<const DenseMatrix> dense_basis_;
  std::shared_ptr<const NonlinearTerm> nonlinear_;
  SparseMatrix mass_;
  SparseMatrix stiffness_;
  SparseMatrix potential_mass_;
};

}  // namespace lodnls
