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

#include <array>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace lodnls {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Triangle = std::array<int, 3>;

/// Structured triangulation of the unit square. Node (i, j) sits at
/// (i/n, j/n) with index j*(n+1)+i; every cell is cut bottom-left to
/// top-right into the counterclockwise triangles (a,b,c) and (a,c,d).
class Mesh {
 public:
  static Mesh structured(int n_side);

  int n_side() const { return n_side_; }
  double h() const { return 1.0 / n_side_; }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_interior_nodes() const { return static_cast<int>(interior_nodes_.size()); }

  std::span<const Point> nodes() const { return nodes_; }
  std::span<const Triangle> elements() const { return elements_; }
  const Point& node(int i) const { return nodes_[i]; }
  const Triangle& element(int e) const { return elements_[e]; }

  int node_index(int i, int j) const { return j * (n_side_ + 1) + i; }

  /// Sorted indices of the nodes on the boundary of the unit square.
  std::span<const int> boundary_nodes() const { return boundary_nodes_; }
  bool is_boundary(int node) const { return interior_index_[node] < 0; }

  /// Interior (Dirichlet-free) numbering: interior_nodes()[k] is the node
  /// carrying unknown k; interior_index(node) is -1 on the boundary.
  std::span<const int> interior_nodes() const { return interior_nodes_; }
  int interior_index(int node) const { return interior_index_[node]; }

  /// Elements incident to a node, ascending.
  std::span<const int> node_elements(int node) const {
    return {node_elements_.data() + node_elements_offsets_[node],
            node_elements_.data() + node_elements_offsets_[node + 1]};
  }

  double signed_area(int e) const;

  /// Plain-text dump: "nodes N elements M", coordinate rows, index triples.
  void write_text(std::ostream& out) const;

 private:
  int n_side_ = 0;
  std::vector<Point> nodes_;
  std::vector<Triangle> elements_;
  std::vector<int> boundary_nodes_;
  std::vector<int> interior_nodes_;
  std::vector<int> interior_index_;
  std::vector<int> node_elements_offsets_;
  std::vector<int> node_elements_;
};

/// Uniform refinement of a structured coarse mesh by an integer factor.
class RefinementMap {
 public:
  RefinementMap(std::shared_ptr<const Mesh> coarse, int factor);

  int factor() const { return factor_; }
  const Mesh& coarse() const { return *coarse_; }
  const Mesh& fine() const { return *fine_; }
  std::shared_ptr<const Mesh> coarse_ptr() const { return coarse_; }
  std::shared_ptr<const Mesh> fine_ptr() const { return fine_; }

  std::span<const int> children(int coarse_element) const {
    const auto r2 = static_cast<std::size_t>(factor_) * factor_;
    return {children_.data() + coarse_element * r2, r2};
  }
  int parent(int fine_element) const { return parent_[fine_element]; }
  int embed_node(int coarse_node) const { return node_embedding_[coarse_node]; }

  /// Nonzero coarse hat values at a fine node, as (coarse node, weight).
  struct HatWeight {
    int coarse_node;
    double weight;
  };
  std::span<const HatWeight> hat_weights(int fine_node) const {
    return {hat_weights_.data() + hat_offsets_[fine_node],
            hat_weights_.data() + hat_offsets_[fine_node + 1]};
  }

 private:
  std::shared_ptr<const Mesh> coarse_;
  std::shared_ptr<const Mesh> fine_;
  int factor_ = 1;
  std::vector<int> children_;
  std::vector<int> parent_;
  std::vector<int> node_embedding_;
  std::vector<int> hat_offsets_;
  std::vector<HatWeight> hat_weights_;
};

/// S_l(K): element K grown by l layers of vertex-adjacent coarse elements.
struct Patch {
  int center_element = 0;
  int layers = 0;
  std::vector<int> elements;              ///< coarse elements, ascending
  std::vector<int> interior_fine_nodes;   ///< fine nodes strictly inside, ascending
  std::vector<int> coarse_nodes_in_patch; ///< vertices of patch elements, ascending
};

/// Coarse-level patch; interior_fine_nodes stays empty.
Patch element_patch(const Mesh& mesh, int element, int layers);

/// Patch with its fine-node sets resolved through the refinement.
Patch element_patch(const RefinementMap& refinement, int element, int layers);

/// Smallest l for which every patch S_l(K) covers the whole mesh.
int saturation_layers(const Mesh& mesh);

}  // namespace lodnls
