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
#include <memory>

#include <benchmark/benchmark.h>

#include "lodnls/assembly.hpp"
#include "lodnls/experiments.hpp"
#include "lodnls/time_integrator.hpp"

namespace lodnls {
namespace {

BilinearFormSpec example_form(int id) {
  const ProblemSpec p = configure_example(id);
  return {p.b, p.V, BilinearFormSpec::default_shift(p.V)};
}

void BM_AssembleStiffness(benchmark::State& state) {
  const Mesh mesh = Mesh::structured(static_cast<int>(state.range(0)));
  const CoefficientField b = configure_example(5).b;
  const ExecutionPolicy policy{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(assemble_stiffness(mesh, b, policy));
  state.SetItemsProcessed(state.iterations() * mesh.num_elements());
}
BENCHMARK(BM_AssembleStiffness)->Args({64, 1})->Args({128, 1})->Args({128, 4})->Unit(benchmark::kMillisecond);

void BM_BuildBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(n));
  const RefinementMap map(coarse, 64 / n);
  const FineOperators ops(map.fine_ptr(), example_form(2));
  const LodBuilder builder(ops, map);
  const int layers = resolve_layers(kAutoLayers, n);
  const ExecutionPolicy policy{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(builder.build(layers, policy));
}
BENCHMARK(BM_BuildBasis)->Args({4, 1})->Args({8, 1})->Args({8, 4})->Unit(benchmark::kMillisecond);

void BM_CnStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemSpec problem = configure_example(1);
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(n));
  const RefinementMap map(coarse, 64 / n);
  const auto ops = std::make_shared<const FineOperators>(map.fine_ptr(), example_form(1));
  const auto basis = std::make_shared<const LodBasis>(
      LodBuilder(*ops, map).build(resolve_layers(kAutoLayers, n)));
  const auto space = DiscreteSpace::lod(ops, basis);
  const double tau = 1e-2;
  const StartResult start = starting_step(space, problem.u0, problem.u1, tau, problem.nonlinearity);
  const CnStepper stepper(space, problem.nonlinearity, tau);
  for (auto _ : state) {
    SimulationState s{start.u0, start.u1, 1, tau, {}};
    benchmark::DoNotOptimize(stepper.step(s));
  }
}
BENCHMARK(BM_CnStep)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lodnls

BENCHMARK_MAIN();
