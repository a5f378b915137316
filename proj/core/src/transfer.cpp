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

#include "lodnls/transfer.hpp"

#include "lodnls/assembly.hpp"
#include "lodnls/error.hpp"

namespace lodnls {

SparseMatrix prolongation_matrix(const RefinementMap& refinement) {
  const Mesh& fine = refinement.fine();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(fine.num_nodes()) * 3);
  for (int v = 0; v < fine.num_nodes(); ++v) {
    for (const auto& hw : refinement.hat_weights(v)) triplets.emplace_back(v, hw.coarse_node, hw.weight);
  }
  SparseMatrix p(fine.num_nodes(), refinement.coarse().num_nodes());
  p.setFromTriplets(triplets.begin(), triplets.end());
  p.makeCompressed();
  return p;
}

Vector prolong(const Vector& coarse, const RefinementMap& refinement) {
  require(coarse.size() == refinement.coarse().num_nodes(), ErrorCode::kDimensionMismatch,
          "prolong: coarse vector has wrong length");
  const Mesh& fine = refinement.fine();
  Vector out(fine.num_nodes());
  for (int v = 0; v < fine.num_nodes(); ++v) {
    double s = 0.0;
    for (const auto& hw : refinement.hat_weights(v)) s += hw.weight * coarse[hw.coarse_node];
    out[v] = s;
  }
  return out;
}

ComplexVector prolong(const ComplexVector& coarse, const RefinementMap& refinement) {
  const Vector re = prolong(Vector(coarse.real()), refinement);
  const Vector im = prolong(Vector(coarse.imag()), refinement);
  ComplexVector out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

L2Projector::L2Projector(const RefinementMap& refinement, ProjectionSpace space)
    : space_(space),
      coarse_nodes_(refinement.coarse().num_nodes()),
      fine_nodes_(refinement.fine().num_nodes()) {
  const Mesh& coarse = refinement.coarse();
  if (space == ProjectionSpace::kFull) {
    dofs_.resize(coarse.num_nodes());
    for (int k = 0; k < coarse.num_nodes(); ++k) dofs_[k] = k;
  } else {
    dofs_.assign(coarse.interior_nodes().begin(), coarse.interior_nodes().end());
  }
  const SparseMatrix p = prolongation_matrix(refinement);
  const SparseMatrix fine_mass = assemble_mass(refinement.fine());
  const SparseMatrix full_load = SparseMatrix(p.transpose()) * fine_mass;

  std::vector<int> dof_of(coarse.num_nodes(), -1);
  for (std::size_t k = 0; k < dofs_.size(); ++k) dof_of[dofs_[k]] = static_cast<int>(k);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t k = 0; k < dofs_.size(); ++k) {
    for (SparseMatrix::InnerIterator it(full_load, dofs_[k]); it; ++it) {
      triplets.emplace_back(static_cast<int>(k), static_cast<int>(it.col()), it.value());
    }
  }
  load_operator_.resize(static_cast<int>(dofs_.size()), fine_nodes_);
  load_operator_.setFromTriplets(triplets.begin(), triplets.end());

  const SparseMatrix coarse_mass = assemble_mass(coarse);
  triplets.clear();
  for (std::size_t k = 0; k < dofs_.size(); ++k) {
    for (SparseMatrix::InnerIterator it(coarse_mass, dofs_[k]); it; ++it) {
      const int c = dof_of[it.col()];
      if (c >= 0) triplets.emplace_back(static_cast<int>(k), c, it.value());
    }
  }
  Eigen::SparseMatrix<double> mh(static_cast<int>(dofs_.size()), static_cast<int>(dofs_.size()));
  mh.setFromTriplets(triplets.begin(), triplets.end());
  mass_factor_.compute(mh);
  require(mass_factor_.info() == Eigen::Success, ErrorCode::kSolverFailure,
          "coarse mass matrix factorization failed");
}

Vector L2Projector::project(const Vector& fine) const {
  require(fine.size() == fine_nodes_, ErrorCode::kDimensionMismatch,
          "l2_project: fine vector has wrong length");
  const Vector rhs = load_operator_ * fine;
  const Vector x = mass_factor_.solve(rhs);
  require(mass_factor_.info() == Eigen::Success, ErrorCode::kSolverFailure,
          "coarse mass solve failed");
  Vector out = Vector::Zero(coarse_nodes_);
  for (std::size_t k = 0; k < dofs_.size(); ++k) out[dofs_[k]] = x[static_cast<int>(k)];
  return out;
}

Vector l2_project(const Vector& fine, const RefinementMap& refinement, ProjectionSpace space) {
  return L2Projector(refinement, space).project(fine);
}

}  // namespace lodnls
