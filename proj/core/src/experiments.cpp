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

#include "lodnls/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lodnls/assembly.hpp"
#include "lodnls/error.hpp"

#ifndef LODNLS_VERSION
#define LODNLS_VERSION "unknown"
#endif

namespace lodnls {

namespace {

constexpr char kReferenceMagic[8] = {'L', 'O', 'D', 'N', 'L', 'S', 'R', '\0'};
constexpr std::uint32_t kReferenceVersion = 1;

struct Space {
  std::shared_ptr<const RefinementMap> refinement;
  std::shared_ptr<const FineOperators> ops;
  std::shared_ptr<const LodBasis> basis;
  DiscreteSpace space;
  int layers = 0;
};

BilinearFormSpec form_for(const ProblemSpec& problem) {
  BilinearFormSpec form;
  form.b = problem.b;
  form.V = problem.V;
  form.sigma = BilinearFormSpec::default_shift(problem.V);
  return form;
}

Space build_space(const ExperimentConfig& config, const ProblemSpec& problem, int coarse_n_side,
                  int layer_token) {
  Space s;
  auto coarse = std::make_shared<const Mesh>(Mesh::structured(coarse_n_side));
  s.refinement =
      std::make_shared<const RefinementMap>(coarse, config.fine_n_side / coarse_n_side);
  s.ops = std::make_shared<const FineOperators>(s.refinement->fine_ptr(), form_for(problem),
                                                config.policy());
  if (config.space == SpaceKind::kFineFem) {
    s.space = DiscreteSpace::fine_fem(s.ops);
    return s;
  }
  s.layers = resolve_layers(layer_token, coarse_n_side);
  const LodBuilder builder(*s.ops, *s.refinement);
  std::optional<LodCache> cache;
  if (config.use_cache) cache.emplace(config.cache_dir);
  s.basis = std::make_shared<const LodBasis>(
      cached_lod_basis(builder, s.layers, config.policy(), cache ? &*cache : nullptr));
  s.space = DiscreteSpace::lod(s.ops, s.basis);
  return s;
}

bool sampled(long n, long steps, long stride) { return n == steps || n % stride == 0; }

std::uint64_t reference_key(const ProblemSpec& problem, int fine_n_side, double tau, long stride,
                            const SolverOptions& options) {
  Fnv1a h;
  h.value(kReferenceVersion).value(problem.example_id).str(problem.name);
  h.value(problem.b.fingerprint()).value(problem.V.fingerprint());
  h.value(problem.nonlinearity.enabled()).value(problem.nonlinearity.exponent());
  h.value(problem.nonlinearity.sign()).value(problem.final_time);
  // Initial data are not hashable as functions; sample them instead.
  for (int j = 1; j < 8; ++j) {
    for (int i = 1; i < 8; ++i) {
      h.value(problem.u0.value(i / 8.0, j / 8.0)).value(problem.u1.value(i / 8.0, j / 8.0));
    }
  }
  h.value(fine_n_side).value(tau).value(stride).value(options.tolerance).value(options.max_iterations);
  return h.digest();
}

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return static_cast<bool>(in);
}

void write_reference(const std::filesystem::path& file, std::uint64_t key,
                     const ReferenceTrajectory& ref) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(file.parent_path());
  const std::filesystem::path tmp =
      file.string() + ".tmp" +
      std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "_" +
      std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw_error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(kReferenceMagic, sizeof(kReferenceMagic));
    put(out, kReferenceVersion);
    put(out, key);
    put<std::int32_t>(out, ref.fine_n_side);
    put(out, ref.tau);
    put<std::int64_t>(out, ref.steps);
    put<std::int64_t>(out, ref.stride);
    put<std::uint64_t>(out, ref.levels.size());
    for (std::size_t i = 0; i < ref.levels.size(); ++i) {
      put<std::int64_t>(out, ref.levels[i]);
      put<std::uint64_t>(out, static_cast<std::uint64_t>(ref.states[i].size()));
      out.write(reinterpret_cast<const char*>(ref.states[i].data()),
                static_cast<std::streamsize>(ref.states[i].size() * sizeof(Complex)));
    }
    if (!out) throw_error(ErrorCode::kIo, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw_error(ErrorCode::kIo, "cannot commit " + file.string());
  }
}

std::optional<ReferenceTrajectory> read_reference(const std::filesystem::path& file,
                                                  std::uint64_t key) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kReferenceMagic, sizeof(magic)) != 0) return std::nullopt;
  std::uint32_t version = 0;
  std::uint64_t stored = 0;
  if (!get(in, version) || version != kReferenceVersion || !get(in, stored) || stored != key) {
    return std::nullopt;
  }
  ReferenceTrajectory ref;
  std::int32_t n_side = 0;
  std::int64_t steps = 0, stride = 0;
  std::uint64_t count = 0;
  if (!get(in, n_side) || !get(in, ref.tau) || !get(in, steps) || !get(in, stride) ||
      !get(in, count)) {
    return std::nullopt;
  }
  const std::uint64_t dofs = static_cast<std::uint64_t>(n_side - 1) * (n_side - 1);
  if (n_side < 1 || count > 1'000'000) return std::nullopt;
  ref.fine_n_side = n_side;
  ref.steps = steps;
  ref.stride = stride;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::int64_t level = 0;
    std::uint64_t size = 0;
    if (!get(in, level) || !get(in, size) || size != dofs) return std::nullopt;
    ComplexVector state(static_cast<Eigen::Index>(size));
    in.read(reinterpret_cast<char*>(state.data()), static_cast<std::streamsize>(size * sizeof(Complex)));
    if (!in) return std::nullopt;
    ref.levels.push_back(level);
    ref.states.push_back(std::move(state));
  }
  return ref;
}

ErrorTriple to_triple(const NormTriple& n) { return {n.l2, n.l4, n.h1}; }

ErrorTriple max_of(const ErrorTriple& a, const ErrorTriple& b) {
  return {std::max(a.l2, b.l2), std::max(a.l4, b.l4), std::max(a.h1, b.h1)};
}

std::string format6(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

long sample_stride(long steps, long samples) {
  require(steps >= 1 && samples >= 1, ErrorCode::kInvalidArgument, "sample_stride: bad arguments");
  return std::max(1L, (steps + samples - 1) / samples);
}

const ComplexVector* ReferenceTrajectory::at_level(long n) const {
  const auto it = std::lower_bound(levels.begin(), levels.end(), n);
  if (it == levels.end() || *it != n) return nullptr;
  return &states[static_cast<std::size_t>(it - levels.begin())];
}

ReferenceTrajectory reference_solution(const ProblemSpec& problem, int fine_n_side, double tau,
                                       const SolverOptions& options,
                                       const std::optional<std::filesystem::path>& cache_dir) {
  const long steps = step_count(problem.final_time, tau);
  const long stride = sample_stride(steps);
  const std::uint64_t key = reference_key(problem, fine_n_side, tau, stride, options);
  std::filesystem::path file;
  if (cache_dir) {
    file = *cache_dir / ("ref_ex" + std::to_string(problem.example_id) + "_h" +
                         std::to_string(fine_n_side) + "_" + hex64(key) + ".bin");
    if (auto hit = read_reference(file, key)) return std::move(*hit);
  }

  auto mesh = std::make_shared<const Mesh>(Mesh::structured(fine_n_side));
  auto ops = std::make_shared<const FineOperators>(mesh, form_for(problem), options.policy);
  const DiscreteSpace space = DiscreteSpace::fine_fem(ops);
  ReferenceTrajectory ref;
  ref.fine_n_side = fine_n_side;
  ref.tau = tau;
  ref.steps = steps;
  ref.stride = stride;
  RunHooks hooks;
  hooks.on_state = [&](long n, double, const ComplexVector& u) {
    if (n >= 1 && sampled(n, steps, stride)) {
      ref.levels.push_back(n);
      ref.states.push_back(u);
    }
  };
  run(problem, space, tau, options, hooks);
  if (cache_dir) write_reference(file, key, ref);
  return ref;
}

ConvergenceReport convergence_study(const ExperimentConfig& config) {
  config.validate();
  const ProblemSpec problem = config.problem();
  ReferenceKind kind = config.reference;
  if (kind == ReferenceKind::kAuto) {
    kind = problem.exact ? ReferenceKind::kExact : ReferenceKind::kFineFem;
  }
  require(kind != ReferenceKind::kExact || problem.exact.has_value(), ErrorCode::kConfig,
          "example has no exact solution");
  const SolverOptions options = config.solver();

  ConvergenceReport report;
  report.example_id = config.example_id;
  report.rates_per_tau = config.tau_rule == TauRule::kCoarseSquared;
  report.reference = kind == ReferenceKind::kExact
                         ? std::string("exact")
                         : "fine-fem h=1/" + std::to_string(config.fine_n_side);

  std::map<double, ReferenceTrajectory> references;
  const auto fine_mesh = Mesh::structured(config.fine_n_side);

  for (int n_coarse : config.coarse_sizes) {
    for (int token : config.layers) {
      ConvergenceRow row;
      row.coarse_n_side = n_coarse;
      row.tau = config.tau_for(n_coarse);
      row.layer_token = token;
      const auto start = std::chrono::steady_clock::now();
      try {
        const ReferenceTrajectory* ref = nullptr;
        if (kind == ReferenceKind::kFineFem) {
          auto it = references.find(row.tau);
          if (it == references.end()) {
            std::optional<std::filesystem::path> dir;
            if (config.use_cache) dir = config.cache_dir;
            it = references
                     .emplace(row.tau, reference_solution(problem, config.fine_n_side, row.tau,
                                                          options, dir))
                     .first;
          }
          ref = &it->second;
        }
        const Space s = build_space(config, problem, n_coarse, token);
        row.layers = s.layers;
        const long steps = step_count(problem.final_time, row.tau);
        const long stride = sample_stride(steps);
        ErrorTriple worst;
        RunHooks hooks;
        hooks.on_state = [&](long n, double t, const ComplexVector& u) {
          if (n < 1 || !sampled(n, steps, stride)) return;
          const ComplexVector nodal = s.space.to_fine_nodal(u);
          ErrorTriple e;
          ErrorTriple size;
          if (kind == ReferenceKind::kExact) {
            const AnalyticFunction exact = problem.exact->at(t);
            e = to_triple(norms(fine_mesh, nodal, &exact));
            if (n == steps) {
              const ComplexVector zero = ComplexVector::Zero(nodal.size());
              size = to_triple(norms(fine_mesh, zero, &exact));
            }
          } else {
            const ComplexVector* r = ref->at_level(n);
            require(r != nullptr, ErrorCode::kInvalidArgument, "reference lacks level " + std::to_string(n));
            const ComplexVector ref_nodal = expand_interior(fine_mesh, *r);
            e = to_triple(norms(fine_mesh, ComplexVector(nodal - ref_nodal)));
            if (n == steps) size = to_triple(norms(fine_mesh, ref_nodal));
          }
          worst = max_of(worst, e);
          if (n == steps) {
            row.final_error = e;
            row.relative_final = {e.l2 / size.l2, e.l4 / size.l4, e.h1 / size.h1};
          }
        };
        const TrajectorySummary summary = run(problem, s.space, row.tau, options, hooks);
        row.error = worst;
        row.mean_iterations = summary.mean_iterations;
        row.max_iterations = summary.max_iterations;
        row.max_modulus_ratio = summary.initial_max_modulus > 0.0
                                    ? summary.max_modulus / summary.initial_max_modulus
                                    : 0.0;
      } catch (const std::exception& e) {
        row.status = std::string("failed: ") + e.what();
      }
      row.runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.rows.push_back(std::move(row));
    }
  }
  fill_rates(report);
  return report;
}

void fill_rates(ConvergenceReport& report) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    ConvergenceRow& row = report.rows[i];
    row.rate.reset();
    if (row.status != "ok") continue;
    for (std::size_t j = i; j-- > 0;) {
      const ConvergenceRow& prev = report.rows[j];
      if (prev.layer_token != row.layer_token) continue;
      if (prev.status == "ok" && 2 * prev.coarse_n_side == row.coarse_n_side) {
        const double scale = report.rates_per_tau ? std::log2(prev.tau / row.tau) : 1.0;
        row.rate = ErrorTriple{std::log2(prev.error.l2 / row.error.l2) / scale,
                               std::log2(prev.error.l4 / row.error.l4) / scale,
                               std::log2(prev.error.h1 / row.error.h1) / scale};
      }
      break;
    }
  }
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report, bool include_runtime) {
  out << "example,n_coarse,H,tau,ell,err_L2,rate_L2,err_L4,rate_L4,err_H1,rate_H1,"
         "final_L2,final_L4,final_H1,rel_L2,rel_L4,rel_H1,iter_mean,iter_max,modulus_ratio,rate_in,status";
  if (include_runtime) out << ",runtime_s";
  out << "\n";
  for (const auto& r : report.rows) {
    auto rate = [&](double ErrorTriple::*field) {
      return r.rate ? format6((*r.rate).*field) : std::string();
    };
    std::string status = r.status;
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << report.example_id << ',' << r.coarse_n_side << ',' << format6(1.0 / r.coarse_n_side)
        << ',' << format6(r.tau) << ',' << r.layers << ',' << format6(r.error.l2) << ','
        << rate(&ErrorTriple::l2) << ',' << format6(r.error.l4) << ',' << rate(&ErrorTriple::l4)
        << ',' << format6(r.error.h1) << ',' << rate(&ErrorTriple::h1) << ','
        << format6(r.final_error.l2) << ',' << format6(r.final_error.l4) << ','
        << format6(r.final_error.h1) << ',' << format6(r.relative_final.l2) << ','
        << format6(r.relative_final.l4) << ',' << format6(r.relative_final.h1) << ','
        << format6(r.mean_iterations) << ',' << r.max_iterations << ','
        << format6(r.max_modulus_ratio) << ',' << (report.rates_per_tau ? "tau" : "H") << ','
        << status;
    if (include_runtime) out << ',' << format6(r.runtime_seconds);
    out << "\n";
  }
}

void write_plot_script(std::ostream& out, const std::string& csv_name) {
  out << "set datafile separator ','\n"
         "set logscale xy\n"
         "set key top left\n"
         "set xlabel 'H'\n"
         "set ylabel 'relative error at T'\n"
         "set terminal pngcairo size 800,600\n"
         "set output 'relative_errors.png'\n"
         "plot '" << csv_name << "' every ::1 using 3:15 with linespoints title 'L2', \\\n"
         "     '" << csv_name << "' every ::1 using 3:17 with linespoints title 'H1'\n";
}

void write_manifest(std::ostream& out, const ExperimentConfig& config,
                    const std::vector<double>& runtimes) {
  nlohmann::ordered_json j;
  j["lodnls_version"] = LODNLS_VERSION;
  j["config_version"] = ExperimentConfig::kVersion;
  j["lod_cache_version"] = kLodCacheVersion;
  j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  j["config_hash"] = hex64(config.hash());
  j["config"] = config.canonical();
  j["example"] = config.example_id;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  j["runtimes_s"] = runtimes;
  out << j.dump(2) << "\n";
}

EnergyRun simulate(const ExperimentConfig& config, int coarse_n_side, int layer_token) {
  config.validate();
  const ProblemSpec problem = config.problem();
  const Space s = build_space(config, problem, coarse_n_side, layer_token);
  const double tau = config.tau_for(coarse_n_side);
  EnergyRun result;
  result.layers = s.layers;
  const Mesh& fine = s.ops->mesh();
  RunHooks hooks;
  hooks.on_step = [&](const StepView& v) {
    EnergyRecord r = discrete_energy(v.u_prev, v.u_curr, v.u_next, s.space, problem.nonlinearity,
                                     v.tau, config.energy_indexing);
    r.n = v.n;
    result.records.push_back(r);
    if (problem.exact) {
      const ComplexVector u = restrict_interior(fine, interpolate(fine, problem.exact->at(v.t)));
      const ComplexVector ut =
          restrict_interior(fine, interpolate(fine, problem.exact->time_derivative_at(v.t)));
      result.continuous.push_back(
          2.0 * continuous_energy(u, ut, *s.ops, s.space.nonlinear(), problem.nonlinearity));
    }
  };
  result.summary = run(problem, s.space, tau, config.solver(), hooks);
  result.drift = energy_drift(result.records);
  return result;
}

std::vector<EnergyRun> energy_study(const ExperimentConfig& config) {
  std::vector<EnergyRun> runs;
  for (int token : config.layers) runs.push_back(simulate(config, config.coarse_sizes.front(), token));
  return runs;
}

void write_convergence_outputs(const ExperimentConfig& config, const ConvergenceReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw_error(ErrorCode::kIo, "cannot create " + config.output_dir.string());
  {
    std::ofstream out(config.output_dir / "report.csv");
    write_report_csv(out, report);
    if (!out) throw_error(ErrorCode::kIo, "cannot write report.csv");
  }
  {
    std::ofstream out(config.output_dir / "plot.gp");
    write_plot_script(out, "report.csv");
  }
  std::vector<double> runtimes;
  for (const auto& r : report.rows) runtimes.push_back(r.runtime_seconds);
  std::ofstream out(config.output_dir / "manifest.json");
  write_manifest(out, config, runtimes);
  if (!out) throw_error(ErrorCode::kIo, "cannot write manifest.json");
}

}  // namespace lodnls
