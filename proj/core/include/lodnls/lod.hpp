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

#include "lodnls/mesh.hpp"
#include "lodnls/operators.hpp"
#include "lodnls/types.hpp"
#include "lodnls/util.hpp"

namespace lodnls {

/// Column-major real sparse matrix used for the fine representation of the
/// corrected basis.
using BasisMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Corrected coarse basis R_l lambda_i, one column per interior coarse node,
/// represented on the interior fine nodes.
struct LodBasis {
  int layers = 0;
  double sigma = 0.0;
  int coarse_n_side = 0;
  int factor = 1;
  BasisMatrix basis;
  /// Fine interior indices column i may touch: union of the interior fine
  /// nodes of S_l(K) over coarse elements K adjacent to node i. Ascending.
  std::vector<std::vector<int>> support;
  SparseMatrix a_lod;  ///< B^T A_sigma B
  SparseMatrix m_lod;  ///< B^T M B

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Builds patch correctors and corrected bases for one fine discretization
/// and refinement. Holds references: both must outlive the builder.
class LodBuilder {
 public:
  LodBuilder(const FineOperators& ops, const RefinementMap& refinement);

  /// (lambda_k, phi_p) for interior coarse k and interior fine p.
  const SparseMatrix& constraint() const { return constraint_; }

  /// Q_{K,l} v_H for an arbitrary coarse function (all coarse nodes): the
  /// kernel-constrained patch solution of a(q, w) = -a_K(v_H, w). Returned on
  /// all interior fine nodes, zero outside the patch interior.
  Vector compute_corrector(int element, const Vector& coarse_values, const Patch& patch) const;

  /// Same, for the hat function of one coarse node.
  Vector compute_corrector(int element, int coarse_node, const Patch& patch) const;

  LodBasis build(int layers, const ExecutionPolicy& policy = {}) const;

  /// Recomputes a_lod and m_lod from the basis columns.
  void finalize(LodBasis& basis) const;

  const FineOperators& operators() const { return ops_; }
  const RefinementMap& refinement() const { return refinement_; }

 private:
  struct PatchSystem;

  const FineOperators& ops_;
  const RefinementMap& refinement_;
  SparseMatrix constraint_;
};

LodBasis build_lod_basis(const RefinementMap& refinement, const BilinearFormSpec& form,
                         int layers, const ExecutionPolicy& policy = {});

/// Default localization: ceil(4 log2(1/H)), at least 1.
int default_layers(int coarse_n_side);

/// Symmetrized B^T A B. Switches to dense products once B is mostly full.
SparseMatrix galerkin_product(const BasisMatrix& b, const SparseMatrix& a);

/// LOD coefficients of the a_sigma-Ritz projection of a fine function given
/// on interior fine nodes: solves A_LOD x = B^T A_sigma u.
Vector ritz_project(const Vector& fine, const LodBasis& basis, const FineOperators& ops);
ComplexVector ritz_project(const ComplexVector& fine, const LodBasis& basis,
                           const FineOperators& ops);

/// Galerkin solution of a_sigma(u, v) = (g, v) in the LOD space, returned on
/// interior fine nodes.
Vector lod_galerkin_solve(const LodBasis& basis, const FineOperators& ops, const Vector& load);

struct DecayRow {
  int layers = 0;
  double l2_difference = 0.0;      ///< ||R_l u - R_sat u||_{L2}
  double energy_difference = 0.0;  ///< ||R_l u - R_sat u||_{a}
};

/// Localization error against the saturated basis for the Galerkin
/// approximation of a_sigma(u, v) = (1, v).
std::vector<DecayRow> localization_decay_study(const RefinementMap& refinement,
                                               const BilinearFormSpec& form,
                                               const std::vector<int>& layers,
                                               const ExecutionPolicy& policy = {});

}  // namespace lodnls
