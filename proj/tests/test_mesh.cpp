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
#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "lodnls/error.hpp"
#include "lodnls/mesh.hpp"

namespace lodnls {
namespace {

class MeshSizes : public ::testing::TestWithParam<int> {};

TEST_P(MeshSizes, CountsAreaAndOrientation) {
  const int n = GetParam();
  const Mesh mesh = Mesh::structured(n);
  EXPECT_EQ(mesh.num_nodes(), (n + 1) * (n + 1));
  EXPECT_EQ(mesh.num_elements(), 2 * n * n);
  EXPECT_EQ(mesh.num_interior_nodes(), (n - 1) * (n - 1));
  EXPECT_EQ(static_cast<int>(mesh.boundary_nodes().size()), 4 * n);
  double area = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double a = mesh.signed_area(e);
    EXPECT_GT(a, 0.0);
    area += a;
  }
  EXPECT_NEAR(area, 1.0, 1e-13);
}

TEST_P(MeshSizes, EulerCharacteristicOfDisk) {
  const Mesh mesh = Mesh::structured(GetParam());
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.elements()) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  const long chi = mesh.num_nodes() - static_cast<long>(edges.size()) + mesh.num_elements();
  EXPECT_EQ(chi, 1);
}

TEST_P(MeshSizes, InteriorNumberingIsConsistent) {
  const Mesh mesh = Mesh::structured(GetParam());
  for (int k = 0; k < mesh.num_interior_nodes(); ++k) {
    const int node = mesh.interior_nodes()[k];
    EXPECT_EQ(mesh.interior_index(node), k);
    EXPECT_FALSE(mesh.is_boundary(node));
  }
  for (int node : mesh.boundary_nodes()) {
    const Point& p = mesh.node(node);
    EXPECT_TRUE(p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0);
  }
}

TEST_P(MeshSizes, NodeElementsListIncidence) {
  const Mesh mesh = Mesh::structured(GetParam());
  std::vector<int> count(mesh.num_nodes(), 0);
  for (const auto& t : mesh.elements()) {
    for (int v : t) ++count[v];
  }
  for (int v = 0; v < mesh.num_nodes(); ++v) {
    const auto list = mesh.node_elements(v);
    EXPECT_EQ(static_cast<int>(list.size()), count[v]);
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
    for (int e : list) {
      const auto& t = mesh.element(e);
      EXPECT_TRUE(t[0] == v || t[1] == v || t[2] == v);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, MeshSizes, ::testing::Values(1, 2, 3, 4, 8, 16));

TEST(Mesh, RejectsNonPositiveSize) {
  EXPECT_THROW(Mesh::structured(0), Error);
  EXPECT_THROW(Mesh::structured(-3), Error);
}

class RefinementCases : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(RefinementCases, EmbeddingChildrenAndHatWeights) {
  const auto [n, r] = GetParam();
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(n));
  const RefinementMap map(coarse, r);
  const Mesh& fine = map.fine();
  EXPECT_EQ(fine.n_side(), n * r);
  for (int v = 0; v < coarse->num_nodes(); ++v) {
    const Point& pc = coarse->node(v);
    const Point& pf = fine.node(map.embed_node(v));
    EXPECT_EQ(pc.x, pf.x);
    EXPECT_EQ(pc.y, pf.y);
  }
  std::vector<int> seen(fine.num_elements(), 0);
  for (int e = 0; e < coarse->num_elements(); ++e) {
    const auto kids = map.children(e);
    EXPECT_EQ(static_cast<int>(kids.size()), r * r);
    double area = 0.0;
    for (int c : kids) {
      EXPECT_EQ(map.parent(c), e);
      ++seen[c];
      area += fine.signed_area(c);
    }
    EXPECT_NEAR(area, coarse->signed_area(e), 1e-14);
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  // Hat weights form a partition of unity and reproduce linear functions.
  for (int f = 0; f < fine.num_nodes(); ++f) {
    double sum = 0.0;
    double x = 0.0;
    double y = 0.0;
    for (const auto& w : map.hat_weights(f)) {
      EXPECT_GT(w.weight, 0.0);
      sum += w.weight;
      x += w.weight * coarse->node(w.coarse_node).x;
      y += w.weight * coarse->node(w.coarse_node).y;
    }
    EXPECT_NEAR(sum, 1.0, 1e-14);
    EXPECT_NEAR(x, fine.node(f).x, 1e-14);
    EXPECT_NEAR(y, fine.node(f).y, 1e-14);
  }
}

INSTANTIATE_TEST_SUITE_P(Factors, RefinementCases,
                         ::testing::Values(std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3},
                                           std::pair{4, 4}, std::pair{3, 5}));

// Independent oracle: breadth-first closure over "shares a vertex".
std::vector<int> brute_force_patch(const Mesh& mesh, int element, int layers) {
  std::set<int> patch{element};
  for (int l = 0; l < layers; ++l) {
    std::set<int> vertices;
    for (int e : patch) {
      for (int v : mesh.element(e)) vertices.insert(v);
    }
    for (int e = 0; e < mesh.num_elements(); ++e) {
      for (int v : mesh.element(e)) {
        if (vertices.contains(v)) {
          patch.insert(e);
          break;
        }
      }
    }
  }
  return {patch.begin(), patch.end()};
}

TEST(Patch, ZeroLayersIsTheElement) {
  const Mesh mesh = Mesh::structured(4);
  const Patch p = element_patch(mesh, 5, 0);
  EXPECT_EQ(p.elements, std::vector<int>{5});
  EXPECT_EQ(p.coarse_nodes_in_patch.size(), 3u);
}

TEST(Patch, CornerElementMatchesBruteForce) {
  const Mesh mesh = Mesh::structured(4);
  for (int layers = 0; layers <= 8; ++layers) {
    EXPECT_EQ(element_patch(mesh, 0, layers).elements, brute_force_patch(mesh, 0, layers));
  }
}

TEST(Patch, AllElementsMatchBruteForce) {
  const Mesh mesh = Mesh::structured(3);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int layers = 0; layers <= 3; ++layers) {
      EXPECT_EQ(element_patch(mesh, e, layers).elements, brute_force_patch(mesh, e, layers));
    }
  }
}

TEST(Patch, MonotoneAndSaturating) {
  for (int n : {1, 2, 4, 8}) {
    const Mesh mesh = Mesh::structured(n);
    const int sat = saturation_layers(mesh);
    EXPECT_LE(sat, 2 * n);
    for (int e = 0; e < mesh.num_elements(); ++e) {
      std::vector<int> previous;
      for (int layers = 0; layers <= 2 * n; ++layers) {
        const auto elems = element_patch(mesh, e, layers).elements;
        EXPECT_TRUE(std::includes(elems.begin(), elems.end(), previous.begin(), previous.end()));
        if (layers >= sat) {
          EXPECT_EQ(static_cast<int>(elems.size()), mesh.num_elements());
        }
        previous = elems;
      }
    }
  }
}

TEST(Patch, SaturationCountForDiagonalSplit) {
  // Crossing the anti-diagonal direction costs two layers per cell.
  EXPECT_EQ(saturation_layers(Mesh::structured(1)), 1);
  for (int n : {2, 4, 8, 16}) EXPECT_EQ(saturation_layers(Mesh::structured(n)), 2 * n - 1);
}

TEST(Patch, FineNodesAreStrictlyInside) {
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(4));
  const RefinementMap map(coarse, 3);
  const Patch p = element_patch(map, 9, 1);
  const Patch whole = element_patch(map, 9, 16);
  EXPECT_EQ(static_cast<int>(whole.interior_fine_nodes.size()), map.fine().num_interior_nodes());
  std::set<int> fine_elements_nodes;
  for (int e : p.elements) {
    for (int c : map.children(e)) {
      for (int v : map.fine().element(c)) fine_elements_nodes.insert(v);
    }
  }
  for (int v : p.interior_fine_nodes) {
    EXPECT_TRUE(fine_elements_nodes.contains(v));
    EXPECT_FALSE(map.fine().is_boundary(v));
    // Every fine element touching v lies inside the patch.
    for (int c : map.fine().node_elements(v)) {
      EXPECT_TRUE(std::binary_search(p.elements.begin(), p.elements.end(), map.parent(c)));
    }
  }
}

}  // namespace
}  // namespace lodnls
