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

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lodnls {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXd;

/// Real CSR matrix; assembly output and the real blocks of every system.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
/// Complex CSR matrix for the time-step systems.
using ComplexSparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, int>;

}  // namespace lodnls
