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

#include "exact_residual.hpp"
#include "lodnls/error.hpp"
#include "lodnls/experiments.hpp"

namespace lodnls {
namespace {

ExperimentConfig tiny_study(int example) {
  ExperimentConfig c;
  c.example_id = example;
  c.coarse_sizes = {2, 4};
  c.fine_n_side = 16;
  c.tau = 1e-2;
  c.final_time = 0.1;
  c.use_cache = false;
  return c;
}

TEST(Examples, ExactSolutionSatisfiesWeakForm) {
  const ProblemSpec p = configure_example(1);
  ASSERT_TRUE(p.exact.has_value());
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) EXPECT_LE(testing::weak_form_residual(p, t), 1e-6);
}

TEST(Examples, WeakFormResidualDetectsWrongPotential) {
  ProblemSpec p = configure_example(1);
  p.V = CoefficientField::constant(-2.0 * 3.14159 * 3.14159);
  EXPECT_GT(testing::weak_form_residual(p, 0.3), 1e-5);
}

TEST(Examples, InitialDataMatchExactSolution) {
  const ProblemSpec p = configure_example(1);
  for (double x : {0.1, 0.37, 0.8}) {
    EXPECT_EQ(p.u0.value(x, 0.4), p.exact->value(x, 0.4, 0.0));
    EXPECT_NEAR(std::abs(p.u1.value(x, 0.4) - p.exact->time_derivative(x, 0.4, 0.0)), 0.0, 1e-15);
  }
}

TEST(Examples, CoefficientSpotValues) {
  EXPECT_NEAR(configure_example(2).b(0.0, 0.0), 61.4656, 1e-10);
  EXPECT_NEAR(configure_example(2).b(1.0, 1.0), std::pow(3.8, 4), 1e-9);
  const ProblemSpec ex3 = configure_example(3);
  // (1/2, 1/4) belongs to the closed inner square with lattice period 1/8.
  const double lattice_inner = (0.01 + std::cos(2 * M_PI * 0.5 * 8)) * (0.01 + std::cos(2 * M_PI * 0.25 * 8));
  EXPECT_NEAR(ex3.V(0.5, 0.25), 0.0625 + lattice_inner, 1e-12);
  const ProblemSpec ex4 = configure_example(4);
  EXPECT_NEAR(ex4.V(0.5, 0.5), 0.05 + 1.8, 1e-14);
  const ProblemSpec ex4c = configure_example(4, kDefaultSeed, true);
  EXPECT_NEAR(ex4c.V(0.25, 0.5), 0.1 * 0.0625, 1e-14);
  EXPECT_NEAR(ex4c.V(0.75, 0.5), 0.1 * 0.0625 + 1.8, 1e-14);
}

TEST(Examples, CheckerboardDependsOnlyOnSeed) {
  const ProblemSpec a = configure_example(5, 42);
  const ProblemSpec b = configure_example(5, 42);
  const ProblemSpec c = configure_example(5, 7);
  bool differs = false;
  for (int i = 0; i < 128; ++i) {
    const double x = (i + 0.5) / 128.0;
    const double y = (127 - i + 0.5) / 128.0;
    EXPECT_EQ(a.V(x, y), b.V(x, y));
    EXPECT_TRUE(a.V(x, y) == 0.05 || a.V(x, y) == 20.0);
    differs |= a.V(x, y) != c.V(x, y);
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(a.V.fingerprint(), b.V.fingerprint());
}

TEST(Examples, UnknownIdThrows) { EXPECT_THROW(configure_example(6), Error); }

TEST(Config, RoundTripThroughText) {
  ExperimentConfig c;
  c.example_id = 3;
  c.coarse_sizes = {2, 4, 8};
  c.fine_n_side = 64;
  c.tau_rule = TauRule::kCoarseSquared;
  c.layers = {kAutoLayers, 3, kSaturatedLayers};
  c.final_time = 0.5;
  c.nonlinearity = "power";
  c.exponent = 5.0;
  c.energy_indexing = EnergyIndexing::kAsPrinted;
  std::ostringstream out;
  write_config(out, c);
  std::istringstream in(out.str());
  const ExperimentConfig parsed = parse_config(in);
  EXPECT_EQ(parsed.canonical(), c.canonical());
  EXPECT_EQ(parsed.hash(), c.hash());
  EXPECT_EQ(parsed.layers, c.layers);
  EXPECT_DOUBLE_EQ(parsed.tau_for(8), 1.0 / 64.0);
}

TEST(Config, RejectsBadInput) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  const auto code_of = [&](const std::string& text) {
    try {
      parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code_of("[problem]\nexmaple = 2\n"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("version = 2\n"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("[discretization]\ntau_rule = halving\n"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("[discretization]\ncoarse = 3\nfine = 16\n"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("[problem]\nexample = 2\n[discretization]\nreference = exact\n"), ErrorCode::kConfig);
  EXPECT_EQ(code_of("[problem]\nexample = 5\n[discretization]\nfine = 64\ncoarse = 2\n"),
            ErrorCode::kConfig);
  EXPECT_EQ(code_of("[discretization]\ntau = abc\n"), ErrorCode::kConfig);
  EXPECT_THROW(parse("[discretization]\ntau = 0.3\n"), Error);
  EXPECT_EQ(parse("[problem]\nexample = 4\n").example_id, 4);
}

TEST(Config, LayerTokens) {
  EXPECT_EQ(parse_layers_token("auto"), kAutoLayers);
  EXPECT_EQ(parse_layers_token("sat"), kSaturatedLayers);
  EXPECT_EQ(parse_layers_token("6"), 6);
  EXPECT_THROW(parse_layers_token("-4"), Error);
  EXPECT_EQ(layers_token(kSaturatedLayers), "sat");
  EXPECT_EQ(layers_token(5), "5");
}

TEST(Study, SampleStride) {
  EXPECT_EQ(sample_stride(1000), 10);
  EXPECT_EQ(sample_stride(150), 2);
  EXPECT_EQ(sample_stride(1), 1);
}

TEST(Study, RatesBetweenHalvingRows) {
  ConvergenceReport report;
  for (int n : {2, 4, 8}) {
    ConvergenceRow row;
    row.coarse_n_side = n;
    row.tau = 1.0 / (n * n);
    row.error = {1.0 / std::pow(n, 4), 1.0 / std::pow(n, 3), 1.0 / (n * n)};
    report.rows.push_back(row);
  }
  fill_rates(report);
  EXPECT_FALSE(report.rows[0].rate.has_value());
  EXPECT_NEAR(report.rows[2].rate->l2, 4.0, 1e-12);
  EXPECT_NEAR(report.rows[2].rate->h1, 2.0, 1e-12);
  report.rates_per_tau = true;
  fill_rates(report);
  EXPECT_NEAR(report.rows[1].rate->l2, 2.0, 1e-12);
}

TEST(Study, SingleCoarseSizeHasNoRates) {
  ExperimentConfig c = tiny_study(2);
  c.coarse_sizes = {4};
  const ConvergenceReport report = convergence_study(c);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].status, "ok");
  EXPECT_FALSE(report.rows[0].rate.has_value());
  EXPECT_GT(report.rows[0].error.l2, 0.0);
}

TEST(Study, CsvIsIdenticalAcrossThreadCounts) {
  std::string previous;
  for (int threads : {1, 2, 5}) {
    ExperimentConfig c = tiny_study(2);
    c.threads = threads;
    std::ostringstream out;
    write_report_csv(out, convergence_study(c), false);
    if (!previous.empty()) {
      EXPECT_EQ(out.str(), previous);
    }
    previous = out.str();
  }
  EXPECT_EQ(previous.find("runtime"), std::string::npos);
}

TEST(Study, ExactAndReferenceErrorsAgreeForExampleOne) {
  ExperimentConfig c = tiny_study(1);
  c.coarse_sizes = {2};
  c.reference = ReferenceKind::kExact;
  const double exact = convergence_study(c).rows[0].error.l2;
  c.reference = ReferenceKind::kFineFem;
  const double reference = convergence_study(c).rows[0].error.l2;
  EXPECT_NEAR(reference / exact, 1.0, 0.1);
}

}  // namespace
}  // namespace lodnls
