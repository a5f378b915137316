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
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lodnls {

enum class CoefficientKind { kConstant, kSmooth, kPiecewiseGrid, kRandomCheckerboard };

/// Scalar field on the unit square used for b(x, y) and V(x, y).
///
/// Piecewise fields use half-open cells [k*s, (k+1)*s): a point on a cell
/// interface belongs to the cell on its right/top. The checkerboard draws one
/// value per cell from std::mt19937_64(seed) in row-major cell order: the top
/// bit of each 64-bit draw selects `low` (0) or `high` (1).
class CoefficientField {
 public:
  using Evaluator = std::function<double(double, double)>;

  static CoefficientField constant(double value);
  static CoefficientField smooth(std::string name, Evaluator f, double lower, double upper);
  static CoefficientField piecewise(std::string name, Evaluator f, double cell_size,
                                    double lower, double upper);
  static CoefficientField checkerboard(std::uint64_t seed, double cell_size, double low,
                                       double high);

  double operator()(double x, double y) const { return eval_(x, y); }

  CoefficientKind kind() const { return kind_; }
  bool is_constant() const { return kind_ == CoefficientKind::kConstant; }
  double constant_value() const { return constant_; }
  const std::string& name() const { return name_; }
  /// Declared bounds lower <= f <= upper.
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double cell_size() const { return cell_size_; }
  std::uint64_t seed() const { return seed_; }

  /// f + sigma, keeping metadata.
  CoefficientField shifted(double sigma) const;

  /// Minimum/maximum over a uniform (n+1)x(n+1) sample grid plus cell centers.
  double sampled_min(int n = 256) const;
  double sampled_max(int n = 256) const;

  /// Stable fingerprint of the metadata and a sample grid.
  std::uint64_t fingerprint() const;

 private:
  CoefficientKind kind_ = CoefficientKind::kConstant;
  std::string name_;
  Evaluator eval_;
  double constant_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  double cell_size_ = 0.0;
  std::uint64_t seed_ = 0;
};

}  // namespace lodnls
