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

#include "lodnls/time_integrator.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "lodnls/error.hpp"

namespace lodnls {

namespace {

using ComplexColSparse = Eigen::SparseMatrix<Complex>;
using ComplexDense = Eigen::MatrixXcd;

ComplexVector multiply(const SparseMatrix& a, const ComplexVector& x) {
  ComplexVector out(a.rows());
  out.real() = a * Vector(x.real());
  out.imag() = a * Vector(x.imag());
  return out;
}

double m_norm(const SparseMatrix& m, const ComplexVector& x) {
  const Vector re = x.real();
  const Vector im = x.imag();
  return std::sqrt(std::max(0.0, re.dot(m * re) + im.dot(m * im)));
}

bool all_finite(const ComplexVector& x) { return x.allFinite(); }

/// sum_k c_k A_k as a complex matrix.
ComplexColSparse combine(const std::vector<std::pair<Complex, const SparseMatrix*>>& terms, int n) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& [c, a] : terms) {
    for (int r = 0; r < a->outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(*a, r); it; ++it) {
        triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), c * it.value());
      }
    }
  }
  ComplexColSparse out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

std::string format_history(const std::vector<double>& history) {
  std::ostringstream s;
  s.precision(3);
  const std::size_t from = history.size() > 5 ? history.size() - 5 : 0;
  for (std::size_t i = from; i < history.size(); ++i) s << (i > from ? ", " : "") << history[i];
  return s.str();
}

}  // namespace

/// Factorization of a complex system matrix: dense LU for the small LOD
/// spaces, sparse LU for the fine FEM space.
class CnStepper::Factorization {
 public:
  Factorization(const ComplexColSparse& k, SpaceKind kind) : dense_(kind == SpaceKind::kLod) {
    if (dense_) {
      lu_dense_.compute(ComplexDense(k));
    } else {
      lu_sparse_.analyzePattern(k);
      lu_sparse_.factorize(k);
      require(lu_sparse_.info() == Eigen::Success, ErrorCode::kSolverFailure,
              "sparse LU of the step matrix failed");
    }
  }
  ComplexVector solve(const ComplexVector& b) const {
    if (dense_) return lu_dense_.solve(b);
    ComplexVector x = lu_sparse_.solve(b);
    return x;
  }

 private:
  bool dense_;
  Eigen::PartialPivLU<ComplexDense> lu_dense_;
  mutable Eigen::SparseLU<ComplexColSparse, Eigen::COLAMDOrdering<int>> lu_sparse_;
};

namespace {

/// Fixed point x <- K^{-1}(rhs - g(x)) with g the restricted nonlinear load.
template <class Load>
ComplexVector picard(const DiscreteSpace& space, const std::function<ComplexVector(const ComplexVector&)>& solve,
                     const ComplexVector& rhs, ComplexVector x, const Nonlinearity& nl,
                     const SolverOptions& options, StepReport& report, Load&& load,
                     ErrorCode failure, long step_index) {
  report = {};
  if (!nl.enabled()) {
    x = solve(rhs);
    report.iterations = 1;
    report.increments.push_back(0.0);
    if (!all_finite(x)) {
      throw StepFailure(failure, "non-finite values in step " + std::to_string(step_index),
                        step_index, report.increments);
    }
    return x;
  }
  for (int k = 1; k <= options.max_iterations; ++k) {
    const ComplexVector next = solve(rhs - load(x));
    if (!all_finite(next)) {
      throw StepFailure(failure, "non-finite values in step " + std::to_string(step_index),
                        step_index, report.increments);
    }
    const double denom = m_norm(space.mass(), next);
    const double delta = m_norm(space.mass(), next - x);
    const double rel = denom > 0.0 ? delta / denom : delta;
    report.iterations = k;
    report.increments.push_back(rel);
    x = next;
    if (rel <= options.tolerance) return x;
  }
  throw StepFailure(failure,
                    "fixed-point iteration did not converge in step " +
                        std::to_string(step_index) + " after " +
                        std::to_string(options.max_iterations) +
                        " sweeps; last increments: " + format_history(report.increments),
                    step_index, report.increments);
}

}  // namespace

CnStepper::CnStepper(const DiscreteSpace& space, Nonlinearity nl, double tau,
                     SolverOptions options)
    : space_(&space), nl_(nl), tau_(tau), options_(options) {
  require(std::isfinite(tau) && tau != 0.0, ErrorCode::kInvalidArgument,
          "time step must be finite and nonzero");
  require(options.tolerance > 0.0 && options.max_iterations >= 1, ErrorCode::kInvalidArgument,
          "solver tolerance must be positive and max_iterations >= 1");
  const Complex inv_tau2(1.0 / (tau * tau), 0.0);
  const Complex half_i(0.0, 0.5 / tau);
  const ComplexColSparse k = combine({{inv_tau2 + half_i, &space.mass()},
                                      {0.5, &space.stiffness()},
                                      {0.5, &space.potential_mass()}},
                                     space.dim());
  factor_ = std::make_unique<Factorization>(k, space.kind());
}

CnStepper::~CnStepper() = default;
CnStepper::CnStepper(CnStepper&&) noexcept = default;
CnStepper& CnStepper::operator=(CnStepper&&) noexcept = default;

ComplexVector CnStepper::next(const ComplexVector& u_prev, const ComplexVector& u_curr,
                              StepReport* report, long step_index) const {
  const DiscreteSpace& space = *space_;
  require(u_prev.size() == space.dim() && u_curr.size() == space.dim(),
          ErrorCode::kDimensionMismatch, "step: state vectors do not match the space");
  const double tau = tau_;
  const ComplexVector rhs =
      multiply(space.mass(), (2.0 * u_curr - u_prev) / (tau * tau) +
                              Complex(0.0, 0.5 / tau) * u_prev) -
      0.5 * (multiply(space.stiffness(), u_prev) + multiply(space.potential_mass(), u_prev));
  const ComplexVector prev_fine = space.to_fine(u_prev);
  auto load = [&](const ComplexVector& x) {
    const ComplexVector w = space.to_fine(x);
    return space.restrict_load(
        space.nonlinear().load(w, prev_fine, 0.5 * (w + prev_fine), nl_, options_.policy));
  };
  StepReport local;
  ComplexVector x = picard(
      space, [this](const ComplexVector& b) { return factor_->solve(b); }, rhs,
      2.0 * u_curr - u_prev, nl_, options_, local, load, ErrorCode::kStepFailure, step_index);
  if (report != nullptr) *report = std::move(local);
  return x;
}

StepReport CnStepper::step(SimulationState& state) const {
  StepReport report;
  ComplexVector u_next = next(state.u_prev, state.u_curr, &report, state.n);
  state.u_prev = std::move(state.u_curr);
  state.u_curr = std::move(u_next);
  ++state.n;
  return report;
}

StartResult starting_step(const DiscreteSpace& space, const AnalyticFunction& u0,
                          const AnalyticFunction& u1, double tau, const Nonlinearity& nl,
                          const SolverOptions& options) {
  require(std::isfinite(tau) && tau > 0.0, ErrorCode::kInvalidArgument,
          "starting step requires tau > 0");
  StartResult out;
  out.u0 = space.initial_value(u0);
  out.velocity = space.l2_projection(u1);
  const ComplexVector& v = out.velocity;

  const ComplexColSparse k = combine({{Complex(2.0 / (tau * tau), 0.0), &space.mass()},
                                      {1.0, &space.stiffness()},
                                      {1.0, &space.potential_mass()}},
                                     space.dim());
  Eigen::PartialPivLU<ComplexDense> dense;
  Eigen::SparseLU<ComplexColSparse, Eigen::COLAMDOrdering<int>> sparse;
  const bool use_dense = space.kind() == SpaceKind::kLod;
  if (use_dense) {
    dense.compute(ComplexDense(k));
  } else {
    sparse.analyzePattern(k);
    sparse.factorize(k);
    require(sparse.info() == Eigen::Success, ErrorCode::kSolverFailure,
            "sparse LU of the starting-step matrix failed");
  }
  auto solve = [&](const ComplexVector& b) -> ComplexVector {
    if (use_dense) return dense.solve(b);
    ComplexVector x = sparse.solve(b);
    return x;
  };

  const ComplexVector rhs = multiply(space.mass(), (2.0 / (tau * tau)) * (out.u0 + tau * v) -
                                                    Complex(0.0, 1.0) * v) +
                            tau * (multiply(space.stiffness(), v) + multiply(space.potential_mass(), v));
  auto load = [&](const ComplexVector& x) {
    const ComplexVector w = space.to_fine(x);
    const ComplexVector vf = space.to_fine(v);
    const ComplexVector prev = w - 2.0 * tau * vf;
    return space.restrict_load(
        space.nonlinear().load(w, prev, w - tau * vf, nl, options.policy));
  };
  out.u1 = picard(space, solve, rhs, ComplexVector(out.u0 + tau * v), nl, options, out.report,
                  load, ErrorCode::kStartingStepFailure, 0);
  return out;
}

long step_count(double final_time, double tau) {
  require(std::isfinite(final_time) && final_time > 0.0 && std::isfinite(tau) && tau > 0.0,
          ErrorCode::kInvalidArgument, "final time and tau must be positive");
  const double ratio = final_time / tau;
  const double n = std::round(ratio);
  require(n >= 1.0 && std::abs(ratio - n) <= 1e-12 * std::max(1.0, n) * 8.0,
          ErrorCode::kInvalidArgument,
          "T/tau must be an integer (T=" + std::to_string(final_time) +
              ", tau=" + std::to_string(tau) + ")");
  return static_cast<long>(n);
}

TrajectorySummary run(const ProblemSpec& problem, const DiscreteSpace& space, double tau,
                      const SolverOptions& options, const RunHooks& hooks) {
  const long steps = step_count(problem.final_time, tau);
  TrajectorySummary summary;
  summary.steps = steps;

  auto max_modulus = [&](const ComplexVector& x) {
    const ComplexVector f = space.to_fine(x);
    return f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
  };

  StartResult start = starting_step(space, problem.u0, problem.u1, tau, problem.nonlinearity, options);
  summary.iterations.push_back(start.report.iterations);
  summary.initial_max_modulus = max_modulus(start.u0);
  summary.max_modulus = std::max(summary.initial_max_modulus, max_modulus(start.u1));

  if (hooks.on_state) {
    hooks.on_state(0, 0.0, start.u0);
    hooks.on_state(1, tau, start.u1);
  }
  if (hooks.on_step) {
    const ComplexVector u_m1 = start.u1 - 2.0 * tau * start.velocity;
    hooks.on_step(StepView{0, 0.0, tau, u_m1, start.u0, start.u1});
  }

  SimulationState& state = summary.final_state;
  state.tau = tau;
  state.n = 1;
  state.u_prev = std::move(start.u0);
  state.u_curr = std::move(start.u1);

  const CnStepper stepper(space, problem.nonlinearity, tau, options);
  while (state.n < steps) {
    StepReport report;
    ComplexVector u_next = stepper.next(state.u_prev, state.u_curr, &report, state.n);
    summary.iterations.push_back(report.iterations);
    summary.max_modulus = std::max(summary.max_modulus, max_modulus(u_next));
    const double t = static_cast<double>(state.n) * tau;
    if (hooks.on_step) hooks.on_step(StepView{state.n, t, tau, state.u_prev, state.u_curr, u_next});
    state.u_prev = std::move(state.u_curr);
    state.u_curr = std::move(u_next);
    ++state.n;
    if (hooks.on_state) hooks.on_state(state.n, static_cast<double>(state.n) * tau, state.u_curr);
  }

  double total = 0.0;
  for (int it : summary.iterations) {
    total += it;
    summary.max_iterations = std::max(summary.max_iterations, it);
  }
  summary.mean_iterations = summary.iterations.empty() ? 0.0 : total / summary.iterations.size();
  return summary;
}

}  // namespace lodnls
