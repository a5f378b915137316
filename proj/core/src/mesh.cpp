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

#include "lodnls/mesh.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <string>

#include "lodnls/error.hpp"

namespace lodnls {

Mesh Mesh::structured(int n_side) {
  require(n_side >= 1, ErrorCode::kInvalidArgument,
          "structured mesh needs n_side >= 1, got " + std::to_string(n_side));
  Mesh m;
  m.n_side_ = n_side;
  const int np = n_side + 1;
  m.nodes_.reserve(static_cast<std::size_t>(np) * np);
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      m.nodes_.push_back({static_cast<double>(i) / n_side, static_cast<double>(j) / n_side});
    }
  }
  m.elements_.reserve(2 * static_cast<std::size_t>(n_side) * n_side);
  for (int j = 0; j < n_side; ++j) {
    for (int i = 0; i < n_side; ++i) {
      const int a = m.node_index(i, j);
      const int b = m.node_index(i + 1, j);
      const int c = m.node_index(i + 1, j + 1);
      const int d = m.node_index(i, j + 1);
      m.elements_.push_back({a, b, c});
      m.elements_.push_back({a, c, d});
    }
  }
  m.interior_index_.assign(m.nodes_.size(), -1);
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      const int k = m.node_index(i, j);
      if (i == 0 || j == 0 || i == n_side || j == n_side) {
        m.boundary_nodes_.push_back(k);
      } else {
        m.interior_index_[k] = static_cast<int>(m.interior_nodes_.size());
        m.interior_nodes_.push_back(k);
      }
    }
  }

  std::vector<int> counts(m.nodes_.size() + 1, 0);
  for (const auto& t : m.elements_) {
    for (int v : t) ++counts[v + 1];
  }
  for (std::size_t k = 1; k < counts.size(); ++k) counts[k] += counts[k - 1];
  m.node_elements_offsets_ = counts;
  m.node_elements_.resize(counts.back());
  std::vector<int> fill(counts.begin(), counts.end() - 1);
  for (int e = 0; e < m.num_elements(); ++e) {
    for (int v : m.elements_[e]) m.node_elements_[fill[v]++] = e;
  }
  return m;
}

double Mesh::signed_area(int e) const {
  const auto& t = elements_[e];
  const Point& a = nodes_[t[0]];
  const Point& b = nodes_[t[1]];
  const Point& c = nodes_[t[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

void Mesh::write_text(std::ostream& out) const {
  out << "nodes " << num_nodes() << " elements " << num_elements() << '\n';
  out.precision(17);
  for (const auto& p : nodes_) out << p.x << ' ' << p.y << '\n';
  for (const auto& t : elements_) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

RefinementMap::RefinementMap(std::shared_ptr<const Mesh> coarse, int factor)
    : coarse_(std::move(coarse)), factor_(factor) {
  require(coarse_ != nullptr, ErrorCode::kInvalidArgument, "refinement of a null mesh");
  require(factor >= 1, ErrorCode::kInvalidArgument,
          "refinement factor must be >= 1, got " + std::to_string(factor));
  const int n = coarse_->n_side();
  const int nf = n * factor;
  fine_ = std::make_shared<const Mesh>(Mesh::structured(nf));

  const std::size_t r2 = static_cast<std::size_t>(factor) * factor;
  children_.assign(coarse_->num_elements() * r2, -1);
  parent_.assign(fine_->num_elements(), -1);
  std::vector<std::size_t> fill(coarse_->num_elements(), 0);
  for (int jf = 0; jf < nf; ++jf) {
    for (int if_ = 0; if_ < nf; ++if_) {
      const int ic = if_ / factor;
      const int jc = jf / factor;
      const int p = if_ % factor;
      const int q = jf % factor;
      for (int t = 0; t < 2; ++t) {
        // Lower coarse triangle (a,b,c) lies below the cell diagonal.
        const bool lower = p > q || (p == q && t == 0);
        const int parent = 2 * (jc * n + ic) + (lower ? 0 : 1);
        const int child = 2 * (jf * nf + if_) + t;
        parent_[child] = parent;
        children_[parent * r2 + fill[parent]++] = child;
      }
    }
  }

  node_embedding_.resize(coarse_->num_nodes());
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      node_embedding_[coarse_->node_index(i, j)] = fine_->node_index(i * factor, j * factor);
    }
  }

  hat_offsets_.assign(fine_->num_nodes() + 1, 0);
  hat_weights_.reserve(fine_->num_nodes() * 3);
  for (int jf = 0; jf <= nf; ++jf) {
    for (int if_ = 0; if_ <= nf; ++if_) {
      const int ic = std::min(if_ / factor, n - 1);
      const int jc = std::min(jf / factor, n - 1);
      const int p = if_ - ic * factor;
      const int q = jf - jc * factor;
      const double s = static_cast<double>(p) / factor;
      const double t = static_cast<double>(q) / factor;
      const int a = coarse_->node_index(ic, jc);
      const int b = coarse_->node_index(ic + 1, jc);
      const int c = coarse_->node_index(ic + 1, jc + 1);
      const int d = coarse_->node_index(ic, jc + 1);
      std::array<HatWeight, 3> w;
      if (p >= q) {
        w = {HatWeight{a, static_cast<double>(factor - p) / factor},
             HatWeight{b, static_cast<double>(p - q) / factor}, HatWeight{c, t}};
      } else {
        w = {HatWeight{a, static_cast<double>(factor - q) / factor}, HatWeight{c, s},
             HatWeight{d, static_cast<double>(q - p) / factor}};
      }
      std::sort(w.begin(), w.end(),
                [](const HatWeight& l, const HatWeight& r) { return l.coarse_node < r.coarse_node; });
      for (const auto& hw : w) {
        if (hw.weight != 0.0) hat_weights_.push_back(hw);
      }
      hat_offsets_[fine_->node_index(if_, jf) + 1] = static_cast<int>(hat_weights_.size());
    }
  }
}

namespace {

std::vector<int> grow(const Mesh& mesh, std::vector<int> elements, int layers) {
  std::vector<char> in(mesh.num_elements(), 0);
  for (int e : elements) in[e] = 1;
  std::vector<int> frontier = elements;
  for (int l = 0; l < layers && !frontier.empty(); ++l) {
    std::vector<int> next;
    for (int e : frontier) {
      for (int v : mesh.element(e)) {
        for (int nb : mesh.node_elements(v)) {
          if (!in[nb]) {
            in[nb] = 1;
            next.push_back(nb);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<int> out;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (in[e]) out.push_back(e);
  }
  return out;
}

}  // namespace

Patch element_patch(const Mesh& mesh, int element, int layers) {
  require(element >= 0 && element < mesh.num_elements(), ErrorCode::kInvalidArgument,
          "patch center element " + std::to_string(element) + " out of range");
  require(layers >= 0, ErrorCode::kInvalidArgument, "patch layers must be >= 0");
  Patch patch;
  patch.center_element = element;
  patch.layers = layers;
  patch.elements = grow(mesh, {element}, layers);
  std::vector<char> seen(mesh.num_nodes(), 0);
  for (int e : patch.elements) {
    for (int v : mesh.element(e)) seen[v] = 1;
  }
  for (int v = 0; v < mesh.num_nodes(); ++v) {
    if (seen[v]) patch.coarse_nodes_in_patch.push_back(v);
  }
  return patch;
}

Patch element_patch(const RefinementMap& refinement, int element, int layers) {
  Patch patch = element_patch(refinement.coarse(), element, layers);
  const Mesh& fine = refinement.fine();
  std::vector<char> in_patch(refinement.coarse().num_elements(), 0);
  for (int e : patch.elements) in_patch[e] = 1;
  for (int v : fine.interior_nodes()) {
    bool inside = true;
    for (int fe : fine.node_elements(v)) {
      if (!in_patch[refinement.parent(fe)]) {
        inside = false;
        break;
      }
    }
    if (inside) patch.interior_fine_nodes.push_back(v);
  }
  return patch;
}

int saturation_layers(const Mesh& mesh) {
  // Eccentricity of every element in the vertex-adjacency graph.
  const int ne = mesh.num_elements();
  int result = 0;
  std::vector<int> dist(ne);
  for (int s = 0; s < ne; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    int far = 0;
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      far = std::max(far, dist[e]);
      for (int v : mesh.element(e)) {
        for (int nb : mesh.node_elements(v)) {
          if (dist[nb] < 0) {
            dist[nb] = dist[e] + 1;
            queue.push_back(nb);
          }
        }
      }
    }
    result = std::max(result, far);
  }
  return result;
}

}  // namespace lodnls
