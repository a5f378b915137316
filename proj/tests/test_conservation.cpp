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
#include <sstream>

#include <gtest/gtest.h>

#include "lodnls/conservation.hpp"
#include "lodnls/experiments.hpp"
#include "test_support.hpp"

namespace lodnls {
namespace {

ExperimentConfig small_config(int example) {
  ExperimentConfig c;
  c.example_id = example;
  c.coarse_sizes = {4};
  c.fine_n_side = 16;
  c.tau = 1e-2;
  c.final_time = 0.5;
  c.layers = {kSaturatedLayers};
  c.use_cache = false;
  return c;
}

TEST(Energy, ZeroStateHasZeroEnergy) {
  const auto s = testing::make_setup(4, 1, testing::smooth_form());
  const auto space = DiscreteSpace::fine_fem(s.ops);
  const ComplexVector z = ComplexVector::Zero(space.dim());
  const EnergyRecord r = discrete_energy(z, z, z, space, Nonlinearity::cubic(), 0.1);
  EXPECT_EQ(r.total, 0.0);
  EXPECT_FALSE(r.theorem_applies);
}

TEST(Energy, ComponentsAddUpAndScale) {
  const auto s = testing::make_setup(4, 2, testing::smooth_form());
  const auto space = DiscreteSpace::fine_fem(s.ops);
  const ComplexVector a = testing::random_complex_vector(space.dim(), 1, 0.3);
  const ComplexVector b = testing::random_complex_vector(space.dim(), 2, 0.3);
  const ComplexVector c = testing::random_complex_vector(space.dim(), 3, 0.3);
  for (auto indexing : {EnergyIndexing::kConservative, EnergyIndexing::kAsPrinted}) {
    const EnergyRecord r = discrete_energy(a, b, c, space, Nonlinearity::cubic(), 0.1, indexing);
    EXPECT_NEAR(r.total, r.kinetic + r.gradient + r.potential + r.nonlinear, 1e-14 * r.total);
    EXPECT_GT(r.kinetic, 0.0);
    EXPECT_GT(r.gradient, 0.0);
    EXPECT_GT(r.nonlinear, 0.0);
  }
  const Complex scale(0.6, -0.8);
  const double s2 = std::norm(scale) * 4.0;  // |2 * scale|^2
  const EnergyRecord r = discrete_energy(a, b, c, space, Nonlinearity::cubic(), 0.1);
  const EnergyRecord q = discrete_energy(2.0 * scale * a, 2.0 * scale * b, 2.0 * scale * c, space,
                                         Nonlinearity::cubic(), 0.1);
  EXPECT_NEAR(q.kinetic, s2 * r.kinetic, 1e-12 * q.kinetic);
  EXPECT_NEAR(q.gradient, s2 * r.gradient, 1e-12 * q.gradient);
  EXPECT_NEAR(q.potential, s2 * r.potential, 1e-12 * std::abs(q.potential));
  EXPECT_NEAR(q.nonlinear, s2 * s2 * r.nonlinear, 1e-12 * q.nonlinear);
}

TEST(Energy, DriftSummaryAndCsv) {
  std::vector<EnergyRecord> records(3);
  records[0].total = 2.0;
  records[1].total = 2.5;
  records[2].total = 1.0;
  for (int k = 0; k < 3; ++k) records[k].n = k;
  const DriftSummary d = energy_drift(records);
  EXPECT_EQ(d.initial, 2.0);
  EXPECT_EQ(d.max_abs_drift, 1.0);
  EXPECT_EQ(d.max_rel_drift, 0.5);
  std::ostringstream out;
  write_energy_csv(out, records, 0.5);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "n,t,E,kinetic,gradient,potential,nonlinear,drift");
}

class ConservedExamples : public ::testing::TestWithParam<int> {};

TEST_P(ConservedExamples, DriftStaysAtSolverTolerance) {
  const EnergyRun run = simulate(small_config(GetParam()), 4, kSaturatedLayers);
  ASSERT_EQ(run.records.size(), 50u);
  EXPECT_TRUE(run.records.front().theorem_applies);
  EXPECT_LE(run.drift.max_rel_drift, 1e-8);
}

TEST_P(ConservedExamples, PerStepTelescopingIdentity) {
  const ExperimentConfig c = small_config(GetParam());
  const ProblemSpec problem = c.problem();
  const auto s = testing::make_setup(4, 4, BilinearFormSpec{problem.b, problem.V,
                                                          BilinearFormSpec::default_shift(problem.V)});
  const auto basis = std::make_shared<const LodBasis>(LodBuilder(*s.ops, *s.refinement).build(3));
  const auto space = DiscreteSpace::lod(s.ops, basis);
  double worst = 0.0;
  double scale = 0.0;
  RunHooks hooks;
  hooks.on_step = [&](const StepView& v) {
    if (v.n == 0) {
      scale = discrete_energy(v.u_prev, v.u_curr, v.u_next, space, problem.nonlinearity, v.tau).total;
      return;
    }
    worst = std::max(worst, std::abs(telescoping_residual(v.u_prev, v.u_curr, v.u_next, space,
                                                          problem.nonlinearity, v.tau)));
  };
  run(problem, space, c.tau, c.solver(), hooks);
  EXPECT_GT(scale, 0.0);
  EXPECT_LE(worst, 1e-9 * scale);
}

INSTANTIATE_TEST_SUITE_P(UnitDiffusion, ConservedExamples, ::testing::Values(1, 3));

TEST(Energy, ApproximatesTwiceContinuousEnergy) {
  const EnergyRun run = simulate(small_config(1), 4, kSaturatedLayers);
  ASSERT_EQ(run.continuous.size(), run.records.size());
  EXPECT_NEAR(run.records.front().total / run.continuous.front(), 1.0, 0.05);
}

}  // namespace
}  // namespace lodnls
