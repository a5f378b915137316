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

#include "lodnls/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lodnls/error.hpp"

namespace lodnls {

namespace {

double quadratic(const SparseMatrix& a, const ComplexVector& x) {
  const Vector re = x.real();
  const Vector im = x.imag();
  return re.dot(a * re) + im.dot(a * im);
}

bool unit_diffusion(const BilinearFormSpec& form) {
  return form.b.is_constant() && form.b.constant_value() == 1.0;
}

void check_sizes(const DiscreteSpace& space, std::initializer_list<const ComplexVector*> xs) {
  for (const ComplexVector* x : xs) {
    require(x->size() == space.dim(), ErrorCode::kDimensionMismatch,
            "energy: state length does not match the space");
  }
}

}  // namespace

EnergyRecord discrete_energy(const ComplexVector& u_nm1, const ComplexVector& u_n,
                             const ComplexVector& u_np1, const DiscreteSpace& space,
                             const Nonlinearity& nl, double tau, EnergyIndexing indexing) {
  check_sizes(space, {&u_nm1, &u_n, &u_np1});
  require(tau != 0.0, ErrorCode::kInvalidArgument, "energy: tau must be nonzero");
  EnergyRecord r;
  r.kinetic = quadratic(space.mass(), ComplexVector((u_np1 - u_n) / tau));
  r.gradient = 0.5 * (quadratic(space.stiffness(), u_np1) + quadratic(space.stiffness(), u_n));
  r.potential =
      0.5 * (quadratic(space.potential_mass(), u_np1) + quadratic(space.potential_mass(), u_n));
  const NonlinearTerm& term = space.nonlinear();
  if (indexing == EnergyIndexing::kConservative) {
    r.nonlinear = 0.5 * (term.potential(space.to_fine(u_np1), nl) +
                         term.potential(space.to_fine(u_n), nl));
  } else {
    r.nonlinear = 0.5 * (term.potential(space.to_fine(u_n), nl) +
                         term.potential(space.to_fine(u_nm1), nl));
  }
  r.total = r.kinetic + r.gradient + r.potential + r.nonlinear;
  r.theorem_applies = unit_diffusion(space.fine().form());
  return r;
}

double continuous_energy(const ComplexVector& u, const ComplexVector& u_t,
                         const FineOperators& ops, const NonlinearTerm& term,
                         const Nonlinearity& nl) {
  require(u.size() == ops.dofs() && u_t.size() == ops.dofs(), ErrorCode::kDimensionMismatch,
          "continuous energy: vectors must live on interior fine nodes");
  return 0.5 * (quadratic(ops.mass(), u_t) + quadratic(ops.stiffness(), u) +
                quadratic(ops.potential_mass(), u) + term.potential(u, nl));
}

double telescoping_residual(const ComplexVector& u_nm1, const ComplexVector& u_n,
                            const ComplexVector& u_np1, const DiscreteSpace& space,
                            const Nonlinearity& nl, double tau) {
  check_sizes(space, {&u_nm1, &u_n, &u_np1});
  const SparseMatrix& m = space.mass();
  const double kinetic = 2.0 * (quadratic(m, ComplexVector((u_np1 - u_n) / tau)) -
                                quadratic(m, ComplexVector((u_n - u_nm1) / tau)));
  const double gradient =
      quadratic(space.stiffness(), u_np1) - quadratic(space.stiffness(), u_nm1);
  const double potential =
      quadratic(space.potential_mass(), u_np1) - quadratic(space.potential_mass(), u_nm1);
  const NonlinearTerm& term = space.nonlinear();
  const double nonlinear =
      term.potential(space.to_fine(u_np1), nl) - term.potential(space.to_fine(u_nm1), nl);
  return kinetic + gradient + potential + nonlinear;
}

DriftSummary energy_drift(const std::vector<EnergyRecord>& records) {
  DriftSummary s;
  if (records.empty()) return s;
  s.initial = records.front().total;
  for (const auto& r : records) {
    s.max_abs_drift = std::max(s.max_abs_drift, std::abs(r.total - s.initial));
  }
  s.max_rel_drift = s.initial != 0.0 ? s.max_abs_drift / std::abs(s.initial) : s.max_abs_drift;
  return s;
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records, double tau) {
  out << "n,t,E,kinetic,gradient,potential,nonlinear,drift\n";
  const double e0 = records.empty() ? 0.0 : records.front().total;
  char line[256];
  for (const auto& r : records) {
    std::snprintf(line, sizeof(line), "%ld,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n", r.n,
                  static_cast<double>(r.n) * tau, r.total, r.kinetic, r.gradient, r.potential,
                  r.nonlinear, r.total - e0);
    out << line;
  }
}

}  // namespace lodnls
