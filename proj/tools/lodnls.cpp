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

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lodnls/error.hpp"
#include "lodnls/experiments.hpp"
#include "lodnls/lod.hpp"
#include "lodnls/lod_cache.hpp"

namespace {

using lodnls::ExperimentConfig;

struct Overrides {
  std::string config;
  int example = 0;
  std::string coarse;
  double tau = 0.0;
  double final_time = 0.0;
  std::string layers;
  int fine = 0;
  std::string space;
  std::string tau_rule;
  std::string reference;
  std::uint64_t seed = 0;
  int threads = 0;
  double tol = 0.0;
  bool no_cache = false;
  bool center_domain = false;
  bool linear = false;
  std::string energy_indexing;
  std::string out;
  std::string cache_dir;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_common(CLI::App* app, Overrides& o, bool list_sizes) {
  app->add_option("--config", o.config, "INI config file; flags override its values");
  app->add_option("--example", o.example, "example id 1..5");
  app->add_option("--H", o.coarse,
                  list_sizes ? "coarse sizes 1/H, comma separated" : "coarse size 1/H");
  app->add_option("--tau", o.tau, "time step");
  app->add_option("--T", o.final_time, "final time");
  app->add_option("--ell", o.layers,
                  list_sizes ? "localization layers: sat, auto or counts, comma separated"
                             : "localization layers: sat, auto or a count");
  app->add_option("--fine", o.fine, "fine mesh size 1/h");
  app->add_option("--space", o.space, "lod or fem")->check(CLI::IsMember({"lod", "fem"}));
  app->add_option("--seed", o.seed, "checkerboard seed (example 5)");
  app->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--tol", o.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--no-cache", o.no_cache, "do not read or write on-disk caches");
  app->add_option("--cache-dir", o.cache_dir, "cache directory");
  app->add_flag("--center-domain", o.center_domain,
                "evaluate the example 4 potential on the centered square");
  app->add_flag("--linear", o.linear, "drop the nonlinearity (f = 0)");
  app->add_option("--energy-indexing", o.energy_indexing, "conservative or as-printed")
      ->check(CLI::IsMember({"conservative", "as-printed"}));
  app->add_option("--out", o.out, "output directory");
}

ExperimentConfig build_config(const Overrides& o, const CLI::App& app) {
  ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : lodnls::load_config(o.config);
  auto given = [&](const char* name) {
    const CLI::Option* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--example")) c.example_id = o.example;
  if (given("--H")) {
    c.coarse_sizes.clear();
    for (const auto& s : split(o.coarse)) c.coarse_sizes.push_back(std::stoi(s));
  }
  if (given("--tau")) c.tau = o.tau;
  if (given("--T")) c.final_time = o.final_time;
  if (given("--ell")) {
    c.layers.clear();
    for (const auto& s : split(o.layers)) c.layers.push_back(lodnls::parse_layers_token(s));
  }
  if (given("--fine")) c.fine_n_side = o.fine;
  if (given("--space")) c.space = o.space == "fem" ? lodnls::SpaceKind::kFineFem : lodnls::SpaceKind::kLod;
  if (given("--tau-rule")) {
    c.tau_rule = o.tau_rule == "coarse-squared" ? lodnls::TauRule::kCoarseSquared
                                                : lodnls::TauRule::kFixed;
  }
  if (given("--reference")) {
    c.reference = o.reference == "exact"  ? lodnls::ReferenceKind::kExact
                  : o.reference == "fine" ? lodnls::ReferenceKind::kFineFem
                                          : lodnls::ReferenceKind::kAuto;
  }
  if (given("--seed")) c.seed = o.seed;
  if (given("--threads")) c.threads = o.threads;
  if (given("--tol")) c.tolerance = o.tol;
  if (o.no_cache) c.use_cache = false;
  if (given("--cache-dir")) c.cache_dir = o.cache_dir;
  if (o.center_domain) c.center_domain = true;
  if (o.linear) c.nonlinearity = "none";
  if (given("--energy-indexing")) {
    c.energy_indexing = o.energy_indexing == "as-printed" ? lodnls::EnergyIndexing::kAsPrinted
                                                          : lodnls::EnergyIndexing::kConservative;
  }
  if (given("--out")) c.output_dir = o.out;
  c.validate();
  return c;
}

std::filesystem::path prepare_output(const ExperimentConfig& c) {
  std::filesystem::create_directories(c.output_dir);
  return c.output_dir;
}

void write_energy(const std::filesystem::path& file, const lodnls::EnergyRun& run, double tau) {
  std::ofstream out(file);
  lodnls::write_energy_csv(out, run.records, tau);
  if (!out) lodnls::throw_error(lodnls::ErrorCode::kIo, "cannot write " + file.string());
}

nlohmann::ordered_json run_summary(const lodnls::EnergyRun& run) {
  nlohmann::ordered_json j;
  j["layers"] = run.layers;
  j["steps"] = run.summary.steps;
  j["energy_initial"] = run.drift.initial;
  j["energy_max_abs_drift"] = run.drift.max_abs_drift;
  j["energy_max_rel_drift"] = run.drift.max_rel_drift;
  j["theorem_applies"] = !run.records.empty() && run.records.front().theorem_applies;
  j["mean_iterations"] = run.summary.mean_iterations;
  j["max_iterations"] = run.summary.max_iterations;
  j["max_modulus_ratio"] = run.summary.initial_max_modulus > 0.0
                               ? run.summary.max_modulus / run.summary.initial_max_modulus
                               : 0.0;
  return j;
}

int cmd_run(const Overrides& o, const CLI::App& app) {
  ExperimentConfig c = build_config(o, app);
  const int n_coarse = c.coarse_sizes.front();
  const int token = c.layers.front();
  const lodnls::EnergyRun run = lodnls::simulate(c, n_coarse, token);
  const auto dir = prepare_output(c);
  write_energy(dir / "energy.csv", run, c.tau_for(n_coarse));
  nlohmann::ordered_json j = run_summary(run);
  j["energy_csv"] = (dir / "energy.csv").string();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_converge(const Overrides& o, const CLI::App& app) {
  ExperimentConfig c = build_config(o, app);
  const lodnls::ConvergenceReport report = lodnls::convergence_study(c);
  lodnls::write_convergence_outputs(c, report);
  lodnls::write_report_csv(std::cout, report);
  for (const auto& row : report.rows) {
    if (row.status != "ok") return 1;
  }
  return 0;
}

int cmd_energy(const Overrides& o, const CLI::App& app) {
  ExperimentConfig c = build_config(o, app);
  const auto runs = lodnls::energy_study(c);
  const auto dir = prepare_output(c);
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& run : runs) {
    const auto file = dir / ("energy_ell" + std::to_string(run.layers) + ".csv");
    write_energy(file, run, c.tau_for(c.coarse_sizes.front()));
    nlohmann::ordered_json s = run_summary(run);
    s["energy_csv"] = file.string();
    j.push_back(s);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_decay(const Overrides& o, const CLI::App& app) {
  ExperimentConfig c = build_config(o, app);
  const lodnls::ProblemSpec problem = c.problem();
  const int n_coarse = c.coarse_sizes.front();
  auto coarse = std::make_shared<const lodnls::Mesh>(lodnls::Mesh::structured(n_coarse));
  const lodnls::RefinementMap refinement(coarse, c.fine_n_side / n_coarse);
  lodnls::BilinearFormSpec form;
  form.b = problem.b;
  form.V = problem.V;
  form.sigma = lodnls::BilinearFormSpec::default_shift(problem.V);
  std::vector<int> layers;
  for (int token : c.layers) layers.push_back(lodnls::resolve_layers(token, n_coarse));
  const auto rows = lodnls::localization_decay_study(refinement, form, layers, c.policy());
  std::cout << "layers,l2_difference,energy_difference\n";
  for (const auto& r : rows) {
    std::printf("%d,%.6g,%.6g\n", r.layers, r.l2_difference, r.energy_difference);
  }
  return 0;
}

int cmd_cache(const std::string& action, const std::string& dir) {
  const lodnls::LodCache cache(dir);
  if (action == "clear") {
    const std::size_t removed = cache.clear();
    std::size_t refs = 0;
    std::error_code ec;
    if (std::filesystem::is_directory(dir, ec)) {
      for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().filename().string().rfind("ref_", 0) == 0) {
          refs += std::filesystem::remove(e.path(), ec) ? 1 : 0;
        }
      }
    }
    nlohmann::ordered_json j;
    j["removed"] = removed;
    j["cache_dir"] = dir;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& e : cache.entries()) {
    j.push_back({{"file", e.file.filename().string()}, {"bytes", e.bytes}});
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int report_error(const std::string& code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lodnls: LOD Crank-Nicolson solver for the wave-operator NLS equation"};
  app.require_subcommand(1);
  Overrides o;

  auto* run = app.add_subcommand("run", "single simulation with an energy trace");
  add_common(run, o, false);
  auto* converge = app.add_subcommand("converge", "convergence table over coarse sizes");
  add_common(converge, o, true);
  converge->add_option("--tau-rule", o.tau_rule, "fixed or coarse-squared")
      ->check(CLI::IsMember({"fixed", "coarse-squared"}));
  converge->add_option("--reference", o.reference, "auto, exact or fine")
      ->check(CLI::IsMember({"auto", "exact", "fine"}));
  auto* energy = app.add_subcommand("energy", "energy drift for each localization layer count");
  add_common(energy, o, true);
  auto* decay = app.add_subcommand("decay", "localization error against saturated patches");
  add_common(decay, o, true);
  auto* cache = app.add_subcommand("cache", "inspect or clear the on-disk cache");
  std::string cache_action = "inspect";
  std::string cache_dir = ".lodnls-cache";
  cache->add_option("action", cache_action, "inspect or clear")
      ->check(CLI::IsMember({"inspect", "clear"}));
  cache->add_option("--cache-dir", cache_dir, "cache directory");

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*run) return cmd_run(o, *run);
    if (*converge) return cmd_converge(o, *converge);
    if (*energy) return cmd_energy(o, *energy);
    if (*decay) return cmd_decay(o, *decay);
    if (*cache) return cmd_cache(cache_action, cache_dir);
  } catch (const lodnls::Error& e) {
    return report_error(std::string(lodnls::to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 2;
}
