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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lodnls/conservation.hpp"
#include "lodnls/lod.hpp"
#include "lodnls/lod_cache.hpp"
#include "lodnls/problem.hpp"
#include "lodnls/time_integrator.hpp"

namespace lodnls {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Examples 1-5. `center_domain` evaluates the Example 4 potential at
/// (x - 1/2, y - 1/2) so both branches of its split are reached.
ProblemSpec configure_example(int id, std::uint64_t seed = kDefaultSeed,
                              bool center_domain = false);

/// Localization layer tokens: a count >= 0, or one of these.
inline constexpr int kSaturatedLayers = -1;
inline constexpr int kAutoLayers = -2;

int parse_layers_token(const std::string& token);
std::string layers_token(int layers);
/// Concrete layer count for a coarse mesh with n_side cells per direction.
int resolve_layers(int token, int coarse_n_side);

enum class TauRule { kFixed, kCoarseSquared };
enum class ReferenceKind { kAuto, kExact, kFineFem };

struct ExperimentConfig {
  static constexpr int kVersion = 1;

  int example_id = 1;
  std::vector<int> coarse_sizes{2, 4, 8, 16};  ///< 1/H
  int fine_n_side = 128;                       ///< 1/h
  TauRule tau_rule = TauRule::kFixed;
  double tau = 1e-3;
  std::vector<int> layers{kAutoLayers};
  double final_time = 1.0;
  /// "cubic", "power" or "none".
  std::string nonlinearity = "cubic";
  double exponent = 3.0;
  int nonlinearity_sign = +1;
  std::uint64_t seed = kDefaultSeed;
  bool center_domain = false;
  SpaceKind space = SpaceKind::kLod;
  ReferenceKind reference = ReferenceKind::kAuto;
  double tolerance = 1e-11;
  int max_iterations = 100;
  int threads = 1;
  EnergyIndexing energy_indexing = EnergyIndexing::kConservative;
  std::filesystem::path output_dir = "lodnls-out";
  std::filesystem::path cache_dir = ".lodnls-cache";
  bool use_cache = true;

  /// Throws kConfig on inconsistent values.
  void validate() const;
  SolverOptions solver() const;
  ExecutionPolicy policy() const { return {threads}; }
  double tau_for(int coarse_n_side) const;
  /// Problem with the configured nonlinearity and final time.
  ProblemSpec problem() const;
  /// Canonical text of every field that influences numerical output.
  std::string canonical() const;
  std::uint64_t hash() const;
};

/// INI-style file with [problem], [discretization], [solver], [output] and a
/// top-level `version = 1`.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& file);
void write_config(std::ostream& out, const ExperimentConfig& config);

/// Fine FEM trajectory sampled at every `stride`-th level and at N.
struct ReferenceTrajectory {
  int fine_n_side = 0;
  double tau = 0.0;
  long steps = 0;
  long stride = 1;
  std::vector<long> levels;
  std::vector<ComplexVector> states;  ///< interior fine nodal values

  const ComplexVector* at_level(long n) const;
};

/// Sampling stride giving at most about `samples` levels.
long sample_stride(long steps, long samples = 100);

ReferenceTrajectory reference_solution(const ProblemSpec& problem, int fine_n_side, double tau,
                                       const SolverOptions& options,
                                       const std::optional<std::filesystem::path>& cache_dir);

struct ErrorTriple {
  double l2 = 0.0;
  double l4 = 0.0;
  double h1 = 0.0;
};

struct ConvergenceRow {
  int coarse_n_side = 0;
  double tau = 0.0;
  int layer_token = kAutoLayers;
  int layers = 0;
  ErrorTriple error;           ///< max over sampled levels
  ErrorTriple final_error;     ///< at t = T
  ErrorTriple relative_final;  ///< final error / ||u(T)||
  std::optional<ErrorTriple> rate;
  double mean_iterations = 0.0;
  int max_iterations = 0;
  double max_modulus_ratio = 0.0;
  double runtime_seconds = 0.0;
  std::string status = "ok";
};

struct ConvergenceReport {
  int example_id = 0;
  std::string reference;  ///< "exact" or "fine-fem h=1/N"
  /// Rates measured against tau (log(e1/e2) / log(tau1/tau2)) instead of H.
  bool rates_per_tau = false;
  std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_study(const ExperimentConfig& config);

/// log2(e_coarse / e_fine) between rows with the same layer token whose H
/// halves, divided by log2(tau ratio) when rates_per_tau is set.
void fill_rates(ConvergenceReport& report);

void write_report_csv(std::ostream& out, const ConvergenceReport& report,
                      bool include_runtime = true);
void write_plot_script(std::ostream& out, const std::string& csv_name);
void write_manifest(std::ostream& out, const ExperimentConfig& config,
                    const std::vector<double>& runtimes);

struct EnergyRun {
  int layers = 0;
  std::vector<EnergyRecord> records;
  /// 2 E(t^n) evaluated from the exact solution when one is known.
  std::vector<double> continuous;
  DriftSummary drift;
  TrajectorySummary summary;
};

/// One LOD run per layer count on the first coarse size.
std::vector<EnergyRun> energy_study(const ExperimentConfig& config);

/// Single simulation with energy recording; writes nothing.
EnergyRun simulate(const ExperimentConfig& config, int coarse_n_side, int layers);

/// Writes report.csv, plot.gp and manifest.json into config.output_dir.
void write_convergence_outputs(const ExperimentConfig& config, const ConvergenceReport& report);

}  // namespace lodnls
