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
#include <memory>

#include <gtest/gtest.h>

#include "lodnls/assembly.hpp"
#include "lodnls/error.hpp"
#include "lodnls/transfer.hpp"
#include "test_support.hpp"

namespace lodnls {
namespace {

TEST(Transfer, ProlongationIsExactForLinearFunctions) {
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(3));
  const RefinementMap map(coarse, 4);
  Vector c(coarse->num_nodes());
  for (int v = 0; v < coarse->num_nodes(); ++v) c[v] = 2.0 - coarse->node(v).x + 3.0 * coarse->node(v).y;
  const Vector f = prolong(c, map);
  for (int v = 0; v < map.fine().num_nodes(); ++v) {
    EXPECT_NEAR(f[v], 2.0 - map.fine().node(v).x + 3.0 * map.fine().node(v).y, 1e-13);
  }
  for (int v = 0; v < coarse->num_nodes(); ++v) EXPECT_EQ(f[map.embed_node(v)], c[v]);
  const SparseMatrix p = prolongation_matrix(map);
  EXPECT_LT((p * c - f).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Transfer, ProjectionInvertsProlongation) {
  for (auto [n, r] : {std::pair{2, 2}, std::pair{4, 3}, std::pair{8, 4}}) {
    auto coarse = std::make_shared<const Mesh>(Mesh::structured(n));
    const RefinementMap map(coarse, r);
    const Vector c = testing::random_vector(coarse->num_nodes(), n * 31 + r);
    EXPECT_LT((l2_project(prolong(c, map), map) - c).cwiseAbs().maxCoeff(), 1e-12);
    // The Dirichlet projector is the identity on coarse H^1_0 functions.
    const Vector c0 = expand_interior(*coarse, restrict_interior(*coarse, c));
    const L2Projector dirichlet(map, ProjectionSpace::kDirichlet);
    EXPECT_LT((dirichlet.project(prolong(c0, map)) - c0).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Transfer, ProjectionIsMassOrthogonal) {
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(3));
  const RefinementMap map(coarse, 3);
  const Vector w = testing::random_vector(map.fine().num_nodes(), 5);
  const Vector pw = prolong(l2_project(w, map), map);
  const SparseMatrix m = assemble_mass(map.fine());
  const SparseMatrix p = prolongation_matrix(map);
  const Vector residual = p.transpose() * (m * (w - pw));
  EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Transfer, DimensionMismatchThrows) {
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(2));
  const RefinementMap map(coarse, 2);
  EXPECT_THROW(prolong(Vector(Vector::Zero(4)), map), Error);
  EXPECT_THROW(l2_project(Vector(Vector::Zero(3)), map), Error);
}

}  // namespace
}  // namespace lodnls
