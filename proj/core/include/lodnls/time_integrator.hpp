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

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "lodnls/discrete_space.hpp"
#include "lodnls/problem.hpp"

namespace lodnls {

struct SolverOptions {
  double tolerance = 1e-11;  ///< relative M-norm fixed-point increment
  int max_iterations = 100;
  ExecutionPolicy policy;
};

/// Two consecutive levels (u^{n-1}, u^n) in space coordinates.
struct SimulationState {
  ComplexVector u_prev;
  ComplexVector u_curr;
  long n = 0;
  double tau = 0.0;
  std::vector<double> energy_trace;
};

struct StepReport {
  int iterations = 0;
  std::vector<double> increments;  ///< relative increment after each sweep
};

/// Conservative Crank-Nicolson step
///
///   M (u+ - 2u + u-)/tau^2 + i M (u+ - u-)/(2 tau)
///     + (A_b + M_V) ubar + N(|u+|^2, |u-|^2) ubar = 0,  ubar = (u+ + u-)/2,
///
/// solved by Picard iteration on the nonlinear load with a single
/// factorization of the tau-dependent linear part per stepper.
class CnStepper {
 public:
  /// tau may be negative (time-reversed stepping); it must be nonzero.
  CnStepper(const DiscreteSpace& space, Nonlinearity nl, double tau, SolverOptions options = {});
  ~CnStepper();
  CnStepper(CnStepper&&) noexcept;
  CnStepper& operator=(CnStepper&&) noexcept;

  /// Replaces (u^{n-1}, u^n) by (u^n, u^{n+1}). Throws StepFailure.
  StepReport step(SimulationState& state) const;

  /// Computes u^{n+1} from fine-level caches; exposed for tests.
  ComplexVector next(const ComplexVector& u_prev, const ComplexVector& u_curr,
                     StepReport* report, long step_index) const;

  double tau() const { return tau_; }

 private:
  class Factorization;

  const DiscreteSpace* space_;
  Nonlinearity nl_;
  double tau_;
  SolverOptions options_;
  std::unique_ptr<Factorization> factor_;
};

struct StartResult {
  ComplexVector u0;
  ComplexVector u1;
  ComplexVector velocity;  ///< u_{1,H}
  StepReport report;
};

/// Initial levels: u^0 from initial_value(), u_{1,H} the L2 projection of u1,
/// and u^1 from the n = 0 scheme with u^{-1} = u^1 - 2 tau u_{1,H}.
/// Throws StepFailure with kStartingStepFailure.
StartResult starting_step(const DiscreteSpace& space, const AnalyticFunction& u0,
                          const AnalyticFunction& u1, double tau, const Nonlinearity& nl,
                          const SolverOptions& options = {});

/// Read-only view handed to hooks: three consecutive levels (u^{n-1}, u^n,
/// u^{n+1}). At n = 0, u_prev is the virtual level u^{-1}.
struct StepView {
  long n = 0;
  double t = 0.0;  ///< t^n
  double tau = 0.0;
  const ComplexVector& u_prev;
  const ComplexVector& u_curr;
  const ComplexVector& u_next;
};

struct RunHooks {
  /// Called once per level n = 0..N-1 after u^{n+1} is known.
  std::function<void(const StepView&)> on_step;
  /// Called for every level u^n, n = 0..N.
  std::function<void(long n, double t, const ComplexVector& u)> on_state;
};

struct TrajectorySummary {
  SimulationState final_state;
  long steps = 0;
  std::vector<int> iterations;  ///< Picard sweeps per step, starting step first
  double mean_iterations = 0.0;
  int max_iterations = 0;
  double initial_max_modulus = 0.0;  ///< max nodal |u^0|
  double max_modulus = 0.0;          ///< max over n of max nodal |u^n|
};

/// Number of steps for T/tau; throws kInvalidArgument unless integral to 1e-12.
long step_count(double final_time, double tau);

/// Starting step followed by N - 1 Crank-Nicolson steps.
TrajectorySummary run(const ProblemSpec& problem, const DiscreteSpace& space, double tau,
                      const SolverOptions& options = {}, const RunHooks& hooks = {});

}  // namespace lodnls
