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

#include "lodnls/operators.hpp"

#include <algorithm>

#include "lodnls/error.hpp"

namespace lodnls {

double BilinearFormSpec::default_shift(const CoefficientField& V) {
  return std::max(0.0, 1.0 - V.sampled_min());
}

FineOperators::FineOperators(std::shared_ptr<const Mesh> mesh, BilinearFormSpec form,
                             const ExecutionPolicy& policy)
    : mesh_(std::move(mesh)), form_(std::move(form)) {
  require(mesh_ != nullptr, ErrorCode::kInvalidArgument, "FineOperators needs a mesh");
  const Mesh& m = *mesh_;
  stiffness_ = restrict_to_interior(assemble_stiffness(m, form_.b, policy), m);
  mass_ = restrict_to_interior(assemble_mass(m, policy), m);
  potential_mass_ = restrict_to_interior(assemble_mass(m, form_.V, policy), m);
  form_matrix_ = stiffness_ + potential_mass_ + form_.sigma * mass_;
  form_matrix_.makeCompressed();

  const auto unit = CoefficientField::constant(1.0);
  element_form_.resize(m.num_elements());
  parallel_for(m.num_elements(), policy, [&](std::size_t i) {
    const int e = static_cast<int>(i);
    const LocalMatrix k = local_stiffness(m, e, form_.b);
    const LocalMatrix mv = local_mass(m, e, form_.V);
    const LocalMatrix mm = local_mass(m, e, unit);
    LocalMatrix& a = element_form_[e];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] = k[r][c] + mv[r][c] + form_.sigma * mm[r][c];
    }
  });
}

}  // namespace lodnls
