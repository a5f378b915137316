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

#include "lodnls/discrete_space.hpp"

#include <cmath>

#include "lodnls/assembly.hpp"
#include "lodnls/error.hpp"
#include "lodnls/quadrature.hpp"

namespace lodnls {

namespace {

using ColSparse = Eigen::SparseMatrix<double>;

// Dense columns pay off once the basis is this full (saturated patches).
constexpr double kDenseThreshold = 0.2;

}  // namespace

NonlinearTerm::NonlinearTerm(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  const int ne = mesh_->num_elements();
  dofs_.resize(ne);
  areas_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const auto& t = mesh_->element(e);
    for (int a = 0; a < 3; ++a) dofs_[e][a] = mesh_->interior_index(t[a]);
    areas_[e] = std::abs(mesh_->signed_area(e));
  }
}

ComplexVector NonlinearTerm::load(const ComplexVector& w, const ComplexVector& v,
                                  const ComplexVector& ubar, const Nonlinearity& nl,
                                  const ExecutionPolicy& policy) const {
  const int n = mesh_->num_interior_nodes();
  require(w.size() == n && v.size() == n && ubar.size() == n, ErrorCode::kDimensionMismatch,
          "nonlinear load: vectors must live on interior fine nodes");
  ComplexVector out = ComplexVector::Zero(n);
  if (!nl.enabled()) return out;
  const QuadratureRule& rule = QuadratureRule::degree4();
  const int ne = mesh_->num_elements();
  std::vector<std::array<Complex, 3>> local(ne);
  auto value = [](const ComplexVector& x, int d) { return d < 0 ? Complex(0.0) : x[d]; };
  parallel_for(ne, policy, [&](std::size_t e) {
    const auto& d = dofs_[e];
    const std::array<Complex, 3> we{value(w, d[0]), value(w, d[1]), value(w, d[2])};
    const std::array<Complex, 3> ve{value(v, d[0]), value(v, d[1]), value(v, d[2])};
    const std::array<Complex, 3> ue{value(ubar, d[0]), value(ubar, d[1]), value(ubar, d[2])};
    std::array<Complex, 3> acc{};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& l = rule.barycentric[q];
      const Complex wq = l[0] * we[0] + l[1] * we[1] + l[2] * we[2];
      const Complex vq = l[0] * ve[0] + l[1] * ve[1] + l[2] * ve[2];
      const Complex uq = l[0] * ue[0] + l[1] * ue[1] + l[2] * ue[2];
      const Complex s = rule.weights[q] * areas_[e] * f_tilde(std::norm(wq), std::norm(vq), nl) * uq;
      for (int a = 0; a < 3; ++a) acc[a] += s * l[a];
    }
    local[e] = acc;
  });
  // Gather per node in ascending element order; independent of thread count.
  const auto interior = mesh_->interior_nodes();
  parallel_for(n, policy, [&](std::size_t i) {
    const int node = interior[i];
    Complex sum = 0.0;
    for (int e : mesh_->node_elements(node)) {
      const auto& t = mesh_->element(e);
      for (int a = 0; a < 3; ++a) {
        if (t[a] == node) sum += local[e][a];
      }
    }
    out[static_cast<Eigen::Index>(i)] = sum;
  });
  return out;
}

double NonlinearTerm::potential(const ComplexVector& u, const Nonlinearity& nl) const {
  require(u.size() == mesh_->num_interior_nodes(), ErrorCode::kDimensionMismatch,
          "nonlinear potential: vector must live on interior fine nodes");
  if (!nl.enabled()) return 0.0;
  const QuadratureRule& rule = QuadratureRule::degree4();
  double total = 0.0;
  for (int e = 0; e < mesh_->num_elements(); ++e) {
    const auto& d = dofs_[e];
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& l = rule.barycentric[q];
      Complex uq = 0.0;
      for (int a = 0; a < 3; ++a) {
        if (d[a] >= 0) uq += l[a] * u[d[a]];
      }
      acc += rule.weights[q] * nl.F(std::norm(uq));
    }
    total += areas_[e] * acc;
  }
  return total;
}

DiscreteSpace DiscreteSpace::fine_fem(std::shared_ptr<const FineOperators> ops) {
  require(ops != nullptr, ErrorCode::kInvalidArgument, "fine_fem: null operators");
  DiscreteSpace s;
  s.kind_ = SpaceKind::kFineFem;
  s.dim_ = ops->dofs();
  s.mass_ = ops->mass();
  s.stiffness_ = ops->stiffness();
  s.potential_mass_ = ops->potential_mass();
  s.nonlinear_ = std::make_shared<NonlinearTerm>(ops->mesh_ptr());
  s.ops_ = std::move(ops);
  return s;
}

DiscreteSpace DiscreteSpace::lod(std::shared_ptr<const FineOperators> ops,
                                 std::shared_ptr<const LodBasis> basis) {
  require(ops != nullptr && basis != nullptr, ErrorCode::kInvalidArgument,
          "lod: null operators or basis");
  require(basis->basis.rows() == ops->dofs(), ErrorCode::kDimensionMismatch,
          "lod: basis rows do not match the fine interior dofs");
  DiscreteSpace s;
  s.kind_ = SpaceKind::kLod;
  s.dim_ = basis->dim();
  const double cells = static_cast<double>(basis->basis.rows()) * std::max<Eigen::Index>(1, basis->basis.cols());
  if (static_cast<double>(basis->basis.nonZeros()) > kDenseThreshold * cells) {
    s.dense_basis_ = std::make_shared<const DenseMatrix>(DenseMatrix(basis->basis));
  }
  s.mass_ = basis->m_lod;
  s.stiffness_ = galerkin_product(basis->basis, ops->stiffness());
  s.potential_mass_ = galerkin_product(basis->basis, ops->potential_mass());
  s.nonlinear_ = std::make_shared<NonlinearTerm>(ops->mesh_ptr());
  s.ops_ = std::move(ops);
  s.basis_ = std::move(basis);
  return s;
}

ComplexVector DiscreteSpace::to_fine(const ComplexVector& x) const {
  require(x.size() == dim_, ErrorCode::kDimensionMismatch, "to_fine: wrong coefficient length");
  if (kind_ == SpaceKind::kFineFem) return x;
  // Two matrix-vector products: a two-column GEMM would repack B every call.
  const Vector re = x.real();
  const Vector im = x.imag();
  ComplexVector out(basis_->basis.rows());
  if (dense_basis_) {
    out.real().noalias() = (*dense_basis_) * re;
    out.imag().noalias() = (*dense_basis_) * im;
  } else {
    out.real() = basis_->basis * re;
    out.imag() = basis_->basis * im;
  }
  return out;
}

ComplexVector DiscreteSpace::restrict_load(const ComplexVector& fine_load) const {
  require(fine_load.size() == ops_->dofs(), ErrorCode::kDimensionMismatch,
          "restrict_load: wrong fine load length");
  if (kind_ == SpaceKind::kFineFem) return fine_load;
  const Vector re = fine_load.real();
  const Vector im = fine_load.imag();
  ComplexVector out(dim_);
  if (dense_basis_) {
    out.real().noalias() = dense_basis_->transpose() * re;
    out.imag().noalias() = dense_basis_->transpose() * im;
  } else {
    out.real() = basis_->basis.transpose() * re;
    out.imag() = basis_->basis.transpose() * im;
  }
  return out;
}

ComplexVector DiscreteSpace::to_fine_nodal(const ComplexVector& x) const {
  return expand_interior(ops_->mesh(), to_fine(x));
}

ComplexVector DiscreteSpace::initial_value(const AnalyticFunction& u0) const {
  const ComplexVector fine = restrict_interior(ops_->mesh(), interpolate(ops_->mesh(), u0));
  if (kind_ == SpaceKind::kFineFem) return fine;
  return ritz_project(fine, *basis_, *ops_);
}

ComplexVector DiscreteSpace::l2_projection(const AnalyticFunction& f) const {
  const ComplexVector load =
      restrict_load(restrict_interior(ops_->mesh(), load_vector(ops_->mesh(), f)));
  ComplexVector out(dim_);
  if (kind_ == SpaceKind::kLod) {
    const Eigen::LLT<DenseMatrix> llt{DenseMatrix(mass_)};
    require(llt.info() == Eigen::Success, ErrorCode::kSolverFailure, "LOD mass matrix is singular");
    out.real() = llt.solve(Vector(load.real()));
    out.imag() = llt.solve(Vector(load.imag()));
  } else {
    Eigen::SimplicialLLT<ColSparse> llt{ColSparse(mass_)};
    require(llt.info() == Eigen::Success, ErrorCode::kSolverFailure, "mass matrix is singular");
    out.real() = llt.solve(Vector(load.real()));
    out.imag() = llt.solve(Vector(load.imag()));
  }
  return out;
}

}  // namespace lodnls
