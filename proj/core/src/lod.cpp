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

#include "lodnls/lod.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lodnls/error.hpp"
#include "lodnls/norms.hpp"

namespace lodnls {

namespace {

using ColSparse = Eigen::SparseMatrix<double>;

/// Interior-fine x interior-coarse prolongation of the coarse hats.
ColSparse interior_prolongation(const RefinementMap& refinement) {
  const Mesh& fine = refinement.fine();
  const Mesh& coarse = refinement.coarse();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int p = 0; p < fine.num_interior_nodes(); ++p) {
    for (const auto& hw : refinement.hat_weights(fine.interior_nodes()[p])) {
      const int k = coarse.interior_index(hw.coarse_node);
      if (k >= 0) triplets.emplace_back(p, k, hw.weight);
    }
  }
  ColSparse out(fine.num_interior_nodes(), coarse.num_interior_nodes());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace

/// Kernel-constrained patch problem
///   [A_p  C_p^T] [q]   [-r]
///   [C_p  0    ] [mu] = [ 0]
/// solved through the Schur complement S = C_p A_p^{-1} C_p^T.
struct LodBuilder::PatchSystem {
  std::vector<int> dofs;         ///< interior fine indices in the patch, ascending
  std::vector<int> local_of;     ///< interior fine index -> local, -1 outside
  Eigen::SimplicialLLT<ColSparse> a_factor;
  DenseMatrix y;                 ///< A_p^{-1} C_p^T
  DenseMatrix c_dense;           ///< C_p
  Eigen::LLT<DenseMatrix> s_factor;
  int constraints = 0;

  PatchSystem(const LodBuilder& builder, const Patch& patch) {
    const Mesh& fine = builder.refinement_.fine();
    const Mesh& coarse = builder.refinement_.coarse();
    dofs.reserve(patch.interior_fine_nodes.size());
    for (int v : patch.interior_fine_nodes) dofs.push_back(fine.interior_index(v));
    local_of.assign(fine.num_interior_nodes(), -1);
    for (std::size_t i = 0; i < dofs.size(); ++i) local_of[dofs[i]] = static_cast<int>(i);
    const int n = static_cast<int>(dofs.size());
    require(n > 0, ErrorCode::kPatchDegenerate,
            "patch around element " + std::to_string(patch.center_element) +
                " has no interior fine nodes");

    const SparseMatrix& a = builder.ops_.form_matrix();
    std::vector<Eigen::Triplet<double>> triplets;
    for (int i = 0; i < n; ++i) {
      for (SparseMatrix::InnerIterator it(a, dofs[i]); it; ++it) {
        const int j = local_of[it.col()];
        if (j >= 0) triplets.emplace_back(i, j, it.value());
      }
    }
    ColSparse ap(n, n);
    ap.setFromTriplets(triplets.begin(), triplets.end());
    a_factor.compute(ap);
    require(a_factor.info() == Eigen::Success, ErrorCode::kPatchDegenerate,
            "patch matrix around element " + std::to_string(patch.center_element) +
                " is not positive definite (check the shift sigma)");

    std::vector<int> rows;
    for (int node : patch.coarse_nodes_in_patch) {
      const int k = coarse.interior_index(node);
      if (k >= 0) rows.push_back(k);
    }
    constraints = static_cast<int>(rows.size());
    if (constraints == 0) return;
    c_dense = DenseMatrix::Zero(constraints, n);
    const SparseMatrix& c = builder.constraint_;
    for (int r = 0; r < constraints; ++r) {
      for (SparseMatrix::InnerIterator it(c, rows[r]); it; ++it) {
        const int j = local_of[it.col()];
        if (j >= 0) c_dense(r, j) = it.value();
      }
    }
    y = a_factor.solve(DenseMatrix(c_dense.transpose()));
    const DenseMatrix s = c_dense * y;
    s_factor.compute(0.5 * (s + s.transpose()));
    require(s_factor.info() == Eigen::Success, ErrorCode::kPatchDegenerate,
            "constraint Schur complement around element " +
                std::to_string(patch.center_element) + " is singular");
  }

  /// Columns of `loads` are r_K restricted to the patch dofs.
  DenseMatrix solve(const DenseMatrix& loads) const {
    DenseMatrix q = a_factor.solve(DenseMatrix(-loads));
    if (constraints > 0) {
      const DenseMatrix mu = s_factor.solve(c_dense * q);
      q -= y * mu;
    }
    return q;
  }

  /// Adds a_K(v_H, .) on patch dofs into column `col` of `loads`.
  void add_element_load(const LodBuilder& builder, int element, const Vector& coarse_values,
                        DenseMatrix& loads, int col) const {
    const RefinementMap& refinement = builder.refinement_;
    const Mesh& fine = refinement.fine();
    for (int fe : refinement.children(element)) {
      const auto& t = fine.element(fe);
      std::array<double, 3> v{};
      for (int a = 0; a < 3; ++a) {
        for (const auto& hw : refinement.hat_weights(t[a])) {
          v[a] += hw.weight * coarse_values[hw.coarse_node];
        }
      }
      const LocalMatrix& ae = builder.ops_.element_form_matrix(fe);
      for (int a = 0; a < 3; ++a) {
        const int g = fine.interior_index(t[a]);
        if (g < 0) continue;
        const int l = local_of[g];
        if (l < 0) continue;
        loads(l, col) += ae[a][0] * v[0] + ae[a][1] * v[1] + ae[a][2] * v[2];
      }
    }
  }
};

LodBuilder::LodBuilder(const FineOperators& ops, const RefinementMap& refinement)
    : ops_(ops), refinement_(refinement) {
  require(&ops.mesh() == &refinement.fine() ||
              ops.mesh().n_side() == refinement.fine().n_side(),
          ErrorCode::kDimensionMismatch, "fine operators do not live on the refined mesh");
  const ColSparse p = interior_prolongation(refinement);
  const ColSparse m = ops.mass();
  constraint_ = SparseMatrix(ColSparse(p.transpose()) * m);
  constraint_.makeCompressed();
}

Vector LodBuilder::compute_corrector(int element, const Vector& coarse_values,
                                     const Patch& patch) const {
  require(coarse_values.size() == refinement_.coarse().num_nodes(), ErrorCode::kDimensionMismatch,
          "corrector: coarse vector has wrong length");
  require(std::find(patch.elements.begin(), patch.elements.end(), element) != patch.elements.end(),
          ErrorCode::kInvalidArgument, "corrector: element is not inside the patch");
  const PatchSystem system(*this, patch);
  DenseMatrix loads = DenseMatrix::Zero(static_cast<int>(system.dofs.size()), 1);
  system.add_element_load(*this, element, coarse_values, loads, 0);
  const DenseMatrix q = system.solve(loads);
  Vector out = Vector::Zero(refinement_.fine().num_interior_nodes());
  for (std::size_t i = 0; i < system.dofs.size(); ++i) out[system.dofs[i]] = q(static_cast<int>(i), 0);
  return out;
}

Vector LodBuilder::compute_corrector(int element, int coarse_node, const Patch& patch) const {
  const auto& t = refinement_.coarse().element(element);
  require(std::find(t.begin(), t.end(), coarse_node) != t.end(), ErrorCode::kInvalidArgument,
          "corrector: coarse node is not a vertex of the element");
  Vector e = Vector::Zero(refinement_.coarse().num_nodes());
  e[coarse_node] = 1.0;
  return compute_corrector(element, e, patch);
}

LodBasis LodBuilder::build(int layers, const ExecutionPolicy& policy) const {
  require(layers >= 0, ErrorCode::kInvalidArgument, "localization layers must be >= 0");
  const Mesh& coarse = refinement_.coarse();
  const Mesh& fine = refinement_.fine();
  const int ne = coarse.num_elements();
  const int nc = coarse.num_interior_nodes();
  const int nf = fine.num_interior_nodes();

  std::vector<Patch> patches(ne);
  parallel_for(ne, policy, [&](std::size_t k) {
    patches[k] = element_patch(refinement_, static_cast<int>(k), layers);
  });

  // Elements sharing a patch share one factorization; their loads for the
  // same coarse node are summed before the solve (the problem is linear).
  std::map<std::vector<int>, int> group_of;
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < ne; ++k) {
    auto [it, inserted] = group_of.try_emplace(patches[k].elements, static_cast<int>(groups.size()));
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(k);
  }

  struct GroupResult {
    std::vector<int> dofs;
    std::vector<int> columns;  // interior coarse indices
    DenseMatrix correctors;
  };
  std::vector<GroupResult> results(groups.size());
  parallel_for(groups.size(), policy, [&](std::size_t g) {
    const Patch& patch = patches[groups[g].front()];
    const PatchSystem system(*this, patch);
    std::vector<int> columns;
    for (int k : groups[g]) {
      for (int v : coarse.element(k)) {
        const int c = coarse.interior_index(v);
        if (c >= 0) columns.push_back(c);
      }
    }
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    DenseMatrix loads = DenseMatrix::Zero(static_cast<int>(system.dofs.size()),
                                          static_cast<int>(columns.size()));
    Vector e = Vector::Zero(coarse.num_nodes());
    for (int k : groups[g]) {
      for (int v : coarse.element(k)) {
        const int c = coarse.interior_index(v);
        if (c < 0) continue;
        const int col = static_cast<int>(std::lower_bound(columns.begin(), columns.end(), c) -
                                         columns.begin());
        e[v] = 1.0;
        system.add_element_load(*this, k, e, loads, col);
        e[v] = 0.0;
      }
    }
    results[g].correctors = system.solve(loads);
    results[g].dofs = system.dofs;
    results[g].columns = std::move(columns);
  });

  std::vector<Eigen::Triplet<double>> triplets;
  const ColSparse p = interior_prolongation(refinement_);
  for (int c = 0; c < p.outerSize(); ++c) {
    for (ColSparse::InnerIterator it(p, c); it; ++it) {
      triplets.emplace_back(static_cast<int>(it.row()), c, it.value());
    }
  }
  for (const auto& r : results) {
    for (std::size_t j = 0; j < r.columns.size(); ++j) {
      for (std::size_t i = 0; i < r.dofs.size(); ++i) {
        const double v = r.correctors(static_cast<int>(i), static_cast<int>(j));
        if (v != 0.0) triplets.emplace_back(r.dofs[i], r.columns[j], v);
      }
    }
  }

  LodBasis basis;
  basis.layers = layers;
  basis.sigma = ops_.form().sigma;
  basis.coarse_n_side = coarse.n_side();
  basis.factor = refinement_.factor();
  basis.basis.resize(nf, nc);
  basis.basis.setFromTriplets(triplets.begin(), triplets.end());
  basis.basis.makeCompressed();

  basis.support.assign(nc, {});
  parallel_for(nc, policy, [&](std::size_t c) {
    const int node = coarse.interior_nodes()[c];
    std::vector<char> mark(nf, 0);
    for (ColSparse::InnerIterator it(p, static_cast<int>(c)); it; ++it) mark[it.row()] = 1;
    for (int k : coarse.node_elements(node)) {
      for (int v : patches[k].interior_fine_nodes) mark[fine.interior_index(v)] = 1;
    }
    auto& s = basis.support[c];
    for (int i = 0; i < nf; ++i) {
      if (mark[i]) s.push_back(i);
    }
  });
  finalize(basis);
  return basis;
}

void LodBuilder::finalize(LodBasis& basis) const {
  basis.a_lod = galerkin_product(basis.basis, ops_.form_matrix());
  basis.m_lod = galerkin_product(basis.basis, ops_.mass());
}

SparseMatrix galerkin_product(const BasisMatrix& b, const SparseMatrix& a) {
  require(a.rows() == b.rows() && a.cols() == b.rows(), ErrorCode::kDimensionMismatch,
          "galerkin_product: operator and basis sizes differ");
  const double cells = static_cast<double>(b.rows()) * std::max<Eigen::Index>(1, b.cols());
  SparseMatrix out;
  if (static_cast<double>(b.nonZeros()) > 0.2 * cells) {
    const DenseMatrix dense(b);
    const DenseMatrix ab = a * dense;
    DenseMatrix g = dense.transpose() * ab;
    g = 0.5 * (g + g.transpose()).eval();
    out = g.sparseView(0.0, 0.0);
  } else {
    const ColSparse bt = b.transpose();
    const ColSparse g = bt * (ColSparse(a) * b);
    out = SparseMatrix(0.5 * (g + ColSparse(g.transpose())));
  }
  out.makeCompressed();
  return out;
}

LodBasis build_lod_basis(const RefinementMap& refinement, const BilinearFormSpec& form, int layers,
                         const ExecutionPolicy& policy) {
  const FineOperators ops(refinement.fine_ptr(), form, policy);
  return LodBuilder(ops, refinement).build(layers, policy);
}

int default_layers(int coarse_n_side) {
  require(coarse_n_side >= 1, ErrorCode::kInvalidArgument, "coarse n_side must be >= 1");
  const int l = static_cast<int>(std::ceil(4.0 * std::log2(static_cast<double>(coarse_n_side)) - 1e-12));
  return std::max(1, l);
}

namespace {

Vector solve_lod(const LodBasis& basis, const Vector& rhs) {
  Eigen::SimplicialLDLT<ColSparse> factor(ColSparse(basis.a_lod));
  require(factor.info() == Eigen::Success, ErrorCode::kSolverFailure,
          "corrected stiffness matrix factorization failed");
  Vector x = factor.solve(rhs);
  require(factor.info() == Eigen::Success, ErrorCode::kSolverFailure, "LOD solve failed");
  return x;
}

}  // namespace

Vector ritz_project(const Vector& fine, const LodBasis& basis, const FineOperators& ops) {
  require(fine.size() == basis.basis.rows(), ErrorCode::kDimensionMismatch,
          "ritz_project: fine vector has wrong length");
  const Vector rhs = basis.basis.transpose() * (ops.form_matrix() * fine);
  const Vector x = solve_lod(basis, rhs);
  const Vector residual = basis.a_lod * x - rhs;
  const double scale = std::max(rhs.norm(), 1e-300);
  require(residual.norm() <= 1e-8 * scale || rhs.norm() == 0.0, ErrorCode::kSolverFailure,
          "ritz_project: residual " + std::to_string(residual.norm() / scale) + " too large");
  return x;
}

ComplexVector ritz_project(const ComplexVector& fine, const LodBasis& basis,
                           const FineOperators& ops) {
  const Vector re = ritz_project(Vector(fine.real()), basis, ops);
  const Vector im = ritz_project(Vector(fine.imag()), basis, ops);
  ComplexVector out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

Vector lod_galerkin_solve(const LodBasis& basis, const FineOperators& ops, const Vector& load) {
  require(load.size() == ops.dofs(), ErrorCode::kDimensionMismatch,
          "lod_galerkin_solve: load has wrong length");
  const Vector x = solve_lod(basis, basis.basis.transpose() * load);
  return basis.basis * x;
}

std::vector<DecayRow> localization_decay_study(const RefinementMap& refinement,
                                               const BilinearFormSpec& form,
                                               const std::vector<int>& layers,
                                               const ExecutionPolicy& policy) {
  const FineOperators ops(refinement.fine_ptr(), form, policy);
  const LodBuilder builder(ops, refinement);
  const Mesh& fine = refinement.fine();
  AnalyticFunction one{[](double, double) { return Complex(1.0, 0.0); }, {}};
  const Vector load = restrict_interior(fine, Vector(load_vector(fine, one).real()));

  const int saturated = saturation_layers(refinement.coarse());
  const Vector reference = lod_galerkin_solve(builder.build(saturated, policy), ops, load);
  std::vector<DecayRow> rows;
  for (int l : layers) {
    const Vector u = lod_galerkin_solve(builder.build(l, policy), ops, load);
    const Vector d = u - reference;
    rows.push_back({l, std::sqrt(std::max(0.0, d.dot(ops.mass() * d))),
                    std::sqrt(std::max(0.0, d.dot(ops.form_matrix() * d)))});
  }
  return rows;
}

}  // namespace lodnls
