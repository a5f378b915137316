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
#include <cmath>
#include <memory>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "lodnls/error.hpp"
#include "lodnls/experiments.hpp"
#include "lodnls/time_integrator.hpp"
#include "test_support.hpp"

namespace lodnls {
namespace {

double rel_diff(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

TEST(StepCount, IntegralRatiosOnly) {
  EXPECT_EQ(step_count(1.0, 1e-3), 1000);
  EXPECT_EQ(step_count(1.0, 1.0 / 256.0), 256);
  EXPECT_EQ(step_count(0.1, 0.1), 1);
  EXPECT_THROW(step_count(1.0, 0.3), Error);
  EXPECT_THROW(step_count(1.0, 0.0), Error);
  EXPECT_THROW(step_count(0.05, 0.1), Error);
}

TEST(CnStep, ZeroStateStaysZero) {
  const auto s = testing::make_setup(4, 1, testing::smooth_form());
  const auto space = DiscreteSpace::fine_fem(s.ops);
  const CnStepper stepper(space, Nonlinearity::cubic(), 1e-2);
  StepReport report;
  const ComplexVector zero = ComplexVector::Zero(space.dim());
  EXPECT_EQ(stepper.next(zero, zero, &report, 1).norm(), 0.0);
  EXPECT_THROW(CnStepper(space, Nonlinearity::cubic(), 0.0), Error);
}

TEST(CnStep, LinearLimitMatchesModalRecurrence) {
  const auto s = testing::make_setup(4, 1, testing::smooth_form());
  const auto space = DiscreteSpace::fine_fem(s.ops);
  const DenseMatrix k = DenseMatrix(space.stiffness()) + DenseMatrix(space.potential_mass());
  const DenseMatrix m(space.mass());
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> eig(k, m);
  ASSERT_EQ(eig.info(), Eigen::Success);
  const double tau = 0.05;
  const CnStepper stepper(space, Nonlinearity::none(), tau);
  const Complex i(0.0, 1.0);
  for (int mode : {0, 3, 8}) {
    const double lambda = eig.eigenvalues()[mode];
    const ComplexVector v = eig.eigenvectors().col(mode).cast<Complex>();
    // c+ (1/tau^2 + i/(2 tau) + lambda/2) = 2c/tau^2 - c- (1/tau^2 - i/(2 tau) + lambda/2)
    const Complex lead = 1.0 / (tau * tau) + i / (2.0 * tau) + lambda / 2.0;
    const Complex back = 1.0 / (tau * tau) - i / (2.0 * tau) + lambda / 2.0;
    Complex c_prev = 1.0;
    Complex c_curr = std::exp(Complex(0.0, -0.3));
    ComplexVector u_prev = c_prev * v;
    ComplexVector u_curr = c_curr * v;
    for (int step = 0; step < 2; ++step) {
      const Complex c_next = (2.0 * c_curr / (tau * tau) - c_prev * back) / lead;
      const ComplexVector u_next = stepper.next(u_prev, u_curr, nullptr, step + 1);
      EXPECT_LT((u_next - c_next * v).cwiseAbs().maxCoeff(), 1e-10) << "mode " << mode;
      c_prev = c_curr;
      c_curr = c_next;
      u_prev = u_curr;
      u_curr = u_next;
    }
  }
}

TEST(CnStep, TimeReversible) {
  const auto s = testing::make_setup(3, 2, testing::smooth_form());
  for (auto kind : {SpaceKind::kFineFem, SpaceKind::kLod}) {
    std::shared_ptr<const LodBasis> basis;
    if (kind == SpaceKind::kLod) {
      basis = std::make_shared<const LodBasis>(LodBuilder(*s.ops, *s.refinement).build(2));
    }
    const auto space = kind == SpaceKind::kLod ? DiscreteSpace::lod(s.ops, basis)
                                               : DiscreteSpace::fine_fem(s.ops);
    SolverOptions options;
    options.tolerance = 1e-13;
    const double tau = 1e-2;
    const CnStepper forward(space, Nonlinearity::cubic(), tau, options);
    const CnStepper backward(space, Nonlinearity::cubic(), -tau, options);
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      const ComplexVector u_prev = testing::random_complex_vector(space.dim(), seed, 0.5);
      const ComplexVector u_curr = testing::random_complex_vector(space.dim(), seed + 50, 0.5);
      const ComplexVector u_next = forward.next(u_prev, u_curr, nullptr, 1);
      const ComplexVector recovered = backward.next(u_next, u_curr, nullptr, 1);
      EXPECT_LT(rel_diff(recovered, u_prev), 1e-10);
    }
  }
}

TEST(CnStep, StartingStepSatisfiesSchemeWithVirtualLevel) {
  const auto problem = configure_example(1);
  const auto s = testing::make_setup(4, 4, BilinearFormSpec{problem.b, problem.V,
                                                          BilinearFormSpec::default_shift(problem.V)});
  const auto basis = std::make_shared<const LodBasis>(LodBuilder(*s.ops, *s.refinement).build(3));
  const auto space = DiscreteSpace::lod(s.ops, basis);
  SolverOptions options;
  options.tolerance = 1e-13;
  const double tau = 1e-2;
  const StartResult start = starting_step(space, problem.u0, problem.u1, tau, problem.nonlinearity, options);
  const CnStepper stepper(space, problem.nonlinearity, tau, options);
  const ComplexVector virtual_level = start.u1 - 2.0 * tau * start.velocity;
  EXPECT_LT(rel_diff(stepper.next(virtual_level, start.u0, nullptr, 0), start.u1), 1e-10);
  EXPECT_LE(start.report.iterations, 25);
}

TEST(CnStep, NonConvergenceRaisesStepFailure) {
  const auto s = testing::make_setup(4, 1, testing::smooth_form());
  const auto space = DiscreteSpace::fine_fem(s.ops);
  SolverOptions options;
  options.tolerance = 1e-15;
  options.max_iterations = 1;
  const CnStepper stepper(space, Nonlinearity::cubic(), 0.1, options);
  const ComplexVector u = testing::random_complex_vector(space.dim(), 4, 2.0);
  try {
    stepper.next(u, u, nullptr, 7);
    FAIL() << "expected a step failure";
  } catch (const StepFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStepFailure);
    EXPECT_EQ(e.step(), 7);
    EXPECT_EQ(e.history().size(), 1u);
  }
}

class ExampleIterations : public ::testing::TestWithParam<int> {};

TEST_P(ExampleIterations, PicardConvergesQuickly) {
  ProblemSpec problem = configure_example(GetParam());
  problem.final_time = 0.1;
  auto mesh = std::make_shared<const Mesh>(Mesh::structured(32));
  const auto ops = std::make_shared<const FineOperators>(
      mesh, BilinearFormSpec{problem.b, problem.V, BilinearFormSpec::default_shift(problem.V)});
  const auto space = DiscreteSpace::fine_fem(ops);
  const TrajectorySummary summary = run(problem, space, 1e-2);
  EXPECT_EQ(summary.steps, 10);
  EXPECT_EQ(summary.iterations.size(), 10u);
  EXPECT_LE(summary.max_iterations, 25);
  EXPECT_TRUE(std::isfinite(summary.max_modulus));
}

INSTANTIATE_TEST_SUITE_P(Examples, ExampleIterations, ::testing::Values(1, 2, 3, 4, 5));

TEST(Run, SingleStepWhenFinalTimeEqualsTau) {
  ProblemSpec problem = configure_example(1);
  problem.final_time = 0.01;
  const auto s = testing::make_setup(8, 1);
  const auto space = DiscreteSpace::fine_fem(std::make_shared<const FineOperators>(
      s.refinement->fine_ptr(), BilinearFormSpec{problem.b, problem.V, 20.0}));
  long states = 0;
  long steps = 0;
  RunHooks hooks;
  hooks.on_state = [&](long, double, const ComplexVector&) { ++states; };
  hooks.on_step = [&](const StepView&) { ++steps; };
  const TrajectorySummary summary = run(problem, space, 0.01, {}, hooks);
  EXPECT_EQ(summary.steps, 1);
  EXPECT_EQ(states, 2);
  EXPECT_EQ(steps, 1);
  EXPECT_EQ(summary.final_state.n, 1);
}

}  // namespace
}  // namespace lodnls
