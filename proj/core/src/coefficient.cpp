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

#include "lodnls/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lodnls/error.hpp"
#include "lodnls/util.hpp"

namespace lodnls {

namespace {

int cell_of(double x, double cell_size, int cells) {
  const int k = static_cast<int>(std::floor(x / cell_size));
  return std::clamp(k, 0, cells - 1);
}

}  // namespace

CoefficientField CoefficientField::constant(double value) {
  CoefficientField f;
  f.kind_ = CoefficientKind::kConstant;
  f.name_ = "constant";
  f.constant_ = value;
  f.lower_ = f.upper_ = value;
  f.eval_ = [value](double, double) { return value; };
  return f;
}

CoefficientField CoefficientField::smooth(std::string name, Evaluator fn, double lower,
                                          double upper) {
  require(static_cast<bool>(fn), ErrorCode::kInvalidArgument, "empty coefficient evaluator");
  CoefficientField f;
  f.kind_ = CoefficientKind::kSmooth;
  f.name_ = std::move(name);
  f.eval_ = std::move(fn);
  f.lower_ = lower;
  f.upper_ = upper;
  return f;
}

CoefficientField CoefficientField::piecewise(std::string name, Evaluator fn, double cell_size,
                                             double lower, double upper) {
  require(cell_size > 0.0, ErrorCode::kInvalidArgument, "cell size must be positive");
  CoefficientField f = smooth(std::move(name), std::move(fn), lower, upper);
  f.kind_ = CoefficientKind::kPiecewiseGrid;
  f.cell_size_ = cell_size;
  return f;
}

CoefficientField CoefficientField::checkerboard(std::uint64_t seed, double cell_size, double low,
                                                double high) {
  require(cell_size > 0.0 && cell_size <= 1.0, ErrorCode::kInvalidArgument,
          "checkerboard cell size must lie in (0, 1]");
  const int cells = static_cast<int>(std::lround(1.0 / cell_size));
  require(std::abs(cells * cell_size - 1.0) < 1e-12, ErrorCode::kInvalidArgument,
          "checkerboard cell size must divide the unit interval");
  auto values = std::make_shared<std::vector<double>>(static_cast<std::size_t>(cells) * cells);
  std::mt19937_64 rng(seed);
  for (auto& v : *values) v = (rng() >> 63) == 0 ? low : high;

  CoefficientField f;
  f.kind_ = CoefficientKind::kRandomCheckerboard;
  f.name_ = "checkerboard";
  f.cell_size_ = cell_size;
  f.seed_ = seed;
  f.lower_ = std::min(low, high);
  f.upper_ = std::max(low, high);
  f.eval_ = [values, cell_size, cells](double x, double y) {
    const int ix = cell_of(x, cell_size, cells);
    const int iy = cell_of(y, cell_size, cells);
    return (*values)[static_cast<std::size_t>(iy) * cells + ix];
  };
  return f;
}

CoefficientField CoefficientField::shifted(double sigma) const {
  if (sigma == 0.0) return *this;
  CoefficientField f = *this;
  f.constant_ += sigma;
  f.lower_ += sigma;
  f.upper_ += sigma;
  f.name_ = name_ + "+shift";
  f.eval_ = [inner = eval_, sigma](double x, double y) { return inner(x, y) + sigma; };
  return f;
}

double CoefficientField::sampled_min(int n) const {
  if (is_constant()) return constant_;
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) m = std::min(m, eval_(double(i) / n, double(j) / n));
  }
  if (cell_size_ > 0.0) {
    const int cells = static_cast<int>(std::lround(1.0 / cell_size_));
    for (int j = 0; j < cells; ++j) {
      for (int i = 0; i < cells; ++i) {
        m = std::min(m, eval_((i + 0.5) * cell_size_, (j + 0.5) * cell_size_));
      }
    }
  }
  return m;
}

double CoefficientField::sampled_max(int n) const {
  if (is_constant()) return constant_;
  double m = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) m = std::max(m, eval_(double(i) / n, double(j) / n));
  }
  if (cell_size_ > 0.0) {
    const int cells = static_cast<int>(std::lround(1.0 / cell_size_));
    for (int j = 0; j < cells; ++j) {
      for (int i = 0; i < cells; ++i) {
        m = std::max(m, eval_((i + 0.5) * cell_size_, (j + 0.5) * cell_size_));
      }
    }
  }
  return m;
}

std::uint64_t CoefficientField::fingerprint() const {
  Fnv1a h;
  h.value(static_cast<int>(kind_)).str(name_).value(constant_).value(cell_size_).value(seed_);
  if (!is_constant()) {
    // Off-grid sample points avoid landing on cell interfaces.
    constexpr int n = 200;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        h.value(eval_((i + 0.37) / n, (j + 0.61) / n));
      }
    }
  }
  return h.digest();
}

}  // namespace lodnls
