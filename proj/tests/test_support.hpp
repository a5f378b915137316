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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "lodnls/lod.hpp"
#include "lodnls/mesh.hpp"
#include "lodnls/operators.hpp"
#include "lodnls/types.hpp"

namespace lodnls::testing {

/// Coarse mesh, refinement and fine operators kept alive together.
struct Setup {
  std::shared_ptr<const Mesh> coarse;
  std::unique_ptr<RefinementMap> refinement;
  std::shared_ptr<const FineOperators> ops;
};

inline Setup make_setup(int coarse_n_side, int factor, BilinearFormSpec form = {}) {
  Setup s;
  s.coarse = std::make_shared<const Mesh>(Mesh::structured(coarse_n_side));
  s.refinement = std::make_unique<RefinementMap>(s.coarse, factor);
  s.ops = std::make_shared<const FineOperators>(s.refinement->fine_ptr(), std::move(form));
  return s;
}

inline BilinearFormSpec smooth_form() {
  BilinearFormSpec form;
  form.b = CoefficientField::smooth(
      "test-b", [](double x, double y) { return 1.5 + 0.5 * std::sin(6.0 * x) * std::cos(5.0 * y); },
      1.0, 2.0);
  form.V = CoefficientField::smooth(
      "test-V", [](double x, double y) { return 2.0 + x * y; }, 2.0, 3.0);
  form.sigma = 0.0;
  return form;
}

inline Vector random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline ComplexVector random_complex_vector(int n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v;
}

/// Fresh empty directory below the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lodnls-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace lodnls::testing
