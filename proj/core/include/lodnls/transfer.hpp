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

#include "lodnls/mesh.hpp"
#include "lodnls/types.hpp"

namespace lodnls {

/// Which coarse P1 space the L2 projection targets: every coarse node, or
/// the H^1_0 space spanned by interior hats (the one defining ker P_H).
enum class ProjectionSpace { kFull, kDirichlet };

/// Fine-node x coarse-node interpolation matrix of the coarse hat functions.
SparseMatrix prolongation_matrix(const RefinementMap& refinement);

/// Nodal interpolation of a coarse P1 function (all nodes) onto the fine mesh.
Vector prolong(const Vector& coarse, const RefinementMap& refinement);
ComplexVector prolong(const ComplexVector& coarse, const RefinementMap& refinement);

/// L2 projection P_H: solves M_H x = P^T M_h w on the selected coarse space.
/// Vectors carry all nodes of their mesh; Dirichlet results are zero on the
/// boundary.
class L2Projector {
 public:
  L2Projector(const RefinementMap& refinement, ProjectionSpace space);

  Vector project(const Vector& fine) const;
  ProjectionSpace space() const { return space_; }

 private:
  ProjectionSpace space_;
  int coarse_nodes_ = 0;
  int fine_nodes_ = 0;
  std::vector<int> dofs_;        ///< coarse nodes carrying unknowns
  SparseMatrix load_operator_;   ///< rows: dofs_, cols: fine nodes; = P^T M_h
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mass_factor_;
};

Vector l2_project(const Vector& fine, const RefinementMap& refinement,
                  ProjectionSpace space = ProjectionSpace::kFull);

}  // namespace lodnls
