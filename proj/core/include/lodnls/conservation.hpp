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

#include <iosfwd>
#include <vector>

#include "lodnls/discrete_space.hpp"

namespace lodnls {

/// Which levels enter the nonlinear part of E^n.
///  kConservative: (F(|u^{n+1}|^2) + F(|u^n|^2)) / 2, the form that telescopes
///                 exactly under the scheme and matches the E^0 formula.
///  kAsPrinted:    (F(|u^n|^2) + F(|u^{n-1}|^2)) / 2.
enum class EnergyIndexing { kConservative, kAsPrinted };

struct EnergyRecord {
  long n = 0;
  double total = 0.0;
  double kinetic = 0.0;    ///< ||(u^{n+1} - u^n)/tau||^2
  double gradient = 0.0;   ///< (|u^{n+1}|_b^2 + |u^n|_b^2) / 2
  double potential = 0.0;  ///< int V (|u^{n+1}|^2 + |u^n|^2) / 2
  double nonlinear = 0.0;
  /// b == 1: E^n is exactly conserved. Otherwise the gradient term
  /// is b-weighted and the record is a generalized energy.
  bool theorem_applies = true;
};

/// E^n from three consecutive levels. All terms are evaluated on the fine
/// mesh after mapping the levels through the space.
EnergyRecord discrete_energy(const ComplexVector& u_nm1, const ComplexVector& u_n,
                             const ComplexVector& u_np1, const DiscreteSpace& space,
                             const Nonlinearity& nl, double tau,
                             EnergyIndexing indexing = EnergyIndexing::kConservative);

/// (1/2) int |u_t|^2 + |grad u|^2 + V |u|^2 + F(|u|^2) for interior fine-node
/// vectors. The discrete E^n approximates twice this value.
double continuous_energy(const ComplexVector& u, const ComplexVector& u_t,
                         const FineOperators& ops, const NonlinearTerm& term,
                         const Nonlinearity& nl);

/// 2 tau dbar ||d_t u^n||^2 + (|u^{n+1}|_1^2 - |u^{n-1}|_1^2)
///   + int V (|u^{n+1}|^2 - |u^{n-1}|^2) + int F(|u^{n+1}|^2) - F(|u^{n-1}|^2).
/// with 2 tau dbar ||d_t u^n||^2 = 2 (||d_t u^n||^2 - ||d_t u^{n-1}||^2).
/// Zero up to solver tolerance for every step of the scheme.
double telescoping_residual(const ComplexVector& u_nm1, const ComplexVector& u_n,
                            const ComplexVector& u_np1, const DiscreteSpace& space,
                            const Nonlinearity& nl, double tau);

struct DriftSummary {
  double initial = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
};

DriftSummary energy_drift(const std::vector<EnergyRecord>& records);

/// CSV with columns n,t,E,kinetic,gradient,potential,nonlinear,drift.
void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records, double tau);

}  // namespace lodnls
