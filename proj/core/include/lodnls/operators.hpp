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

#include "lodnls/assembly.hpp"
#include "lodnls/coefficient.hpp"
#include "lodnls/mesh.hpp"
#include "lodnls/types.hpp"
#include "lodnls/util.hpp"

namespace lodnls {

/// a_sigma(u, v) = (b grad u, grad v) + ((V + sigma) u, v).
struct BilinearFormSpec {
  CoefficientField b = CoefficientField::constant(1.0);
  CoefficientField V = CoefficientField::constant(0.0);
  double sigma = 0.0;

  /// max(0, 1 - min V) over a sample grid: makes V + sigma >= 1.
  static double default_shift(const CoefficientField& V);
};

/// Fine-mesh matrices restricted to interior nodes, plus per-element form
/// matrices for element-local loads. Immutable after construction.
class FineOperators {
 public:
  FineOperators(std::shared_ptr<const Mesh> mesh, BilinearFormSpec form,
                const ExecutionPolicy& policy = {});

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const BilinearFormSpec& form() const { return form_; }
  int dofs() const { return mesh_->num_interior_nodes(); }

  const SparseMatrix& stiffness() const { return stiffness_; }          ///< K_b
  const SparseMatrix& mass() const { return mass_; }                    ///< M
  const SparseMatrix& potential_mass() const { return potential_mass_; }///< M_V
  const SparseMatrix& form_matrix() const { return form_matrix_; }      ///< K_b + M_{V+sigma}

  /// Local a_sigma matrix of fine element e.
  const LocalMatrix& element_form_matrix(int e) const { return element_form_[e]; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  BilinearFormSpec form_;
  SparseMatrix stiffness_;
  SparseMatrix mass_;
  SparseMatrix potential_mass_;
  SparseMatrix form_matrix_;
  std::vector<LocalMatrix> element_form_;
};

}  // namespace lodnls
