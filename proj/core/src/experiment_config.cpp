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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lodnls/error.hpp"
#include "lodnls/experiments.hpp"

namespace lodnls {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (!in || !(in >> std::ws).eof()) {
    throw_error(ErrorCode::kConfig, "config key '" + key + "': cannot parse '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw_error(ErrorCode::kConfig, "config key '" + key + "': expected a boolean, got '" + text + "'");
}

std::string join(const std::vector<int>& xs, bool as_layers) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += as_layers ? layers_token(xs[i]) : std::to_string(xs[i]);
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

const char* to_text(TauRule r) { return r == TauRule::kFixed ? "fixed" : "coarse-squared"; }
const char* to_text(SpaceKind k) { return k == SpaceKind::kLod ? "lod" : "fem"; }
const char* to_text(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::kExact: return "exact";
    case ReferenceKind::kFineFem: return "fine";
    default: return "auto";
  }
}
const char* to_text(EnergyIndexing k) {
  return k == EnergyIndexing::kConservative ? "conservative" : "as-printed";
}

}  // namespace

int parse_layers_token(const std::string& token) {
  const std::string t = trim(token);
  if (t == "sat" || t == "saturated") return kSaturatedLayers;
  if (t == "auto") return kAutoLayers;
  const int l = parse_number<int>("layers", t);
  require(l >= 0, ErrorCode::kConfig, "localization layers must be >= 0");
  return l;
}

std::string layers_token(int layers) {
  if (layers == kSaturatedLayers) return "sat";
  if (layers == kAutoLayers) return "auto";
  return std::to_string(layers);
}

int resolve_layers(int token, int coarse_n_side) {
  const Mesh mesh = Mesh::structured(coarse_n_side);
  if (token == kSaturatedLayers) return saturation_layers(mesh);
  if (token == kAutoLayers) return std::min(default_layers(coarse_n_side), saturation_layers(mesh));
  require(token >= 0, ErrorCode::kInvalidArgument, "invalid localization layer token");
  return token;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw_error(ErrorCode::kConfig, msg); };
  if (example_id < 1 || example_id > 5) fail("example must be in 1..5");
  if (coarse_sizes.empty()) fail("coarse size list is empty");
  if (fine_n_side < 1) fail("fine mesh size must be >= 1");
  for (int n : coarse_sizes) {
    if (n < 1) fail("coarse sizes must be >= 1");
    if (fine_n_side % n != 0) {
      fail("fine size 1/" + std::to_string(fine_n_side) + " is not a refinement of H = 1/" +
           std::to_string(n));
    }
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) fail("tau must be positive");
  if (!(final_time > 0.0)) fail("final time must be positive");
  if (layers.empty()) fail("layer list is empty");
  for (int l : layers) {
    if (l < kAutoLayers) fail("invalid layer entry");
  }
  if (nonlinearity != "cubic" && nonlinearity != "power" && nonlinearity != "none") {
    fail("nonlinearity must be cubic, power or none");
  }
  if (nonlinearity == "power" && !(exponent > 1.0)) fail("power exponent must be > 1");
  if (nonlinearity_sign != 1 && nonlinearity_sign != -1) fail("nonlinearity sign must be +1 or -1");
  if (!(tolerance > 0.0)) fail("solver tolerance must be positive");
  if (max_iterations < 1) fail("max_iterations must be >= 1");
  if (threads < 1) fail("threads must be >= 1");
  if (example_id == 5 && fine_n_side % 128 != 0) {
    fail("example 5 needs a fine mesh resolving the 1/128 checkerboard cells (fine % 128 == 0)");
  }
  if (reference == ReferenceKind::kExact && example_id != 1) {
    fail("only example 1 has an exact solution");
  }
  for (int n : coarse_sizes) (void)step_count(final_time, tau_for(n));
}

SolverOptions ExperimentConfig::solver() const {
  SolverOptions o;
  o.tolerance = tolerance;
  o.max_iterations = max_iterations;
  o.policy = policy();
  return o;
}

double ExperimentConfig::tau_for(int coarse_n_side) const {
  if (tau_rule == TauRule::kFixed) return tau;
  return 1.0 / (static_cast<double>(coarse_n_side) * coarse_n_side);
}

ProblemSpec ExperimentConfig::problem() const {
  ProblemSpec p = configure_example(example_id, seed, center_domain);
  p.final_time = final_time;
  if (nonlinearity == "none") {
    p.nonlinearity = Nonlinearity::none();
  } else if (nonlinearity == "power") {
    p.nonlinearity = Nonlinearity::power(exponent, nonlinearity_sign);
  } else {
    p.nonlinearity = Nonlinearity::cubic(nonlinearity_sign);
  }
  return p;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream s;
  write_config(s, *this);
  return s.str();
}

std::uint64_t ExperimentConfig::hash() const { return Fnv1a().str(canonical()).digest(); }

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw_error(ErrorCode::kConfig, std::string("config syntax: ") + e.what());
  }
  static const std::set<std::string> known = {
      "version",
      "problem.example", "problem.seed", "problem.center_domain", "problem.final_time",
      "problem.nonlinearity", "problem.exponent", "problem.sign",
      "discretization.coarse", "discretization.fine", "discretization.tau",
      "discretization.tau_rule", "discretization.layers", "discretization.space",
      "discretization.reference",
      "solver.tolerance", "solver.max_iterations", "solver.threads", "solver.energy_indexing",
      "output.directory", "output.cache_dir", "output.cache"};
  for (const auto& [section, child] : tree) {
    if (child.empty()) {
      if (!known.contains(section)) throw_error(ErrorCode::kConfig, "unknown config key '" + section + "'");
      continue;
    }
    for (const auto& [key, value] : child) {
      const std::string full = section + "." + key;
      if (!known.contains(full)) throw_error(ErrorCode::kConfig, "unknown config key '" + full + "'");
    }
  }
  const int version = parse_number<int>("version", tree.get<std::string>("version", "1"));
  if (version != ExperimentConfig::kVersion) {
    throw_error(ErrorCode::kConfig, "unsupported config version " + std::to_string(version));
  }

  ExperimentConfig c;
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return trim(*v);
    return std::nullopt;
  };
  if (auto v = get("problem.example")) c.example_id = parse_number<int>("problem.example", *v);
  if (auto v = get("problem.seed")) c.seed = parse_number<std::uint64_t>("problem.seed", *v);
  if (auto v = get("problem.center_domain")) c.center_domain = parse_bool("problem.center_domain", *v);
  if (auto v = get("problem.final_time")) c.final_time = parse_number<double>("problem.final_time", *v);
  if (auto v = get("problem.nonlinearity")) c.nonlinearity = *v;
  if (auto v = get("problem.exponent")) c.exponent = parse_number<double>("problem.exponent", *v);
  if (auto v = get("problem.sign")) c.nonlinearity_sign = parse_number<int>("problem.sign", *v);
  if (auto v = get("discretization.coarse")) {
    c.coarse_sizes.clear();
    for (const auto& item : split_list(*v)) {
      c.coarse_sizes.push_back(parse_number<int>("discretization.coarse", item));
    }
  }
  if (auto v = get("discretization.fine")) c.fine_n_side = parse_number<int>("discretization.fine", *v);
  if (auto v = get("discretization.tau")) c.tau = parse_number<double>("discretization.tau", *v);
  if (auto v = get("discretization.tau_rule")) {
    if (*v == "fixed") {
      c.tau_rule = TauRule::kFixed;
    } else if (*v == "coarse-squared") {
      c.tau_rule = TauRule::kCoarseSquared;
    } else {
      throw_error(ErrorCode::kConfig, "tau_rule must be fixed or coarse-squared");
    }
  }
  if (auto v = get("discretization.layers")) {
    c.layers.clear();
    for (const auto& item : split_list(*v)) c.layers.push_back(parse_layers_token(item));
  }
  if (auto v = get("discretization.space")) {
    if (*v == "lod") {
      c.space = SpaceKind::kLod;
    } else if (*v == "fem") {
      c.space = SpaceKind::kFineFem;
    } else {
      throw_error(ErrorCode::kConfig, "space must be lod or fem");
    }
  }
  if (auto v = get("discretization.reference")) {
    if (*v == "auto") {
      c.reference = ReferenceKind::kAuto;
    } else if (*v == "exact") {
      c.reference = ReferenceKind::kExact;
    } else if (*v == "fine") {
      c.reference = ReferenceKind::kFineFem;
    } else {
      throw_error(ErrorCode::kConfig, "reference must be auto, exact or fine");
    }
  }
  if (auto v = get("solver.tolerance")) c.tolerance = parse_number<double>("solver.tolerance", *v);
  if (auto v = get("solver.max_iterations")) {
    c.max_iterations = parse_number<int>("solver.max_iterations", *v);
  }
  if (auto v = get("solver.threads")) c.threads = parse_number<int>("solver.threads", *v);
  if (auto v = get("solver.energy_indexing")) {
    if (*v == "conservative") {
      c.energy_indexing = EnergyIndexing::kConservative;
    } else if (*v == "as-printed") {
      c.energy_indexing = EnergyIndexing::kAsPrinted;
    } else {
      throw_error(ErrorCode::kConfig, "energy_indexing must be conservative or as-printed");
    }
  }
  if (auto v = get("output.directory")) c.output_dir = *v;
  if (auto v = get("output.cache_dir")) c.cache_dir = *v;
  if (auto v = get("output.cache")) c.use_cache = parse_bool("output.cache", *v);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw_error(ErrorCode::kIo, "cannot open config file " + file.string());
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  out << "version = " << ExperimentConfig::kVersion << "\n\n";
  out << "[problem]\n";
  out << "example = " << c.example_id << "\n";
  out << "seed = " << c.seed << "\n";
  out << "center_domain = " << (c.center_domain ? "true" : "false") << "\n";
  out << "final_time = " << format_double(c.final_time) << "\n";
  out << "nonlinearity = " << c.nonlinearity << "\n";
  out << "exponent = " << format_double(c.exponent) << "\n";
  out << "sign = " << c.nonlinearity_sign << "\n\n";
  out << "[discretization]\n";
  out << "coarse = " << join(c.coarse_sizes, false) << "\n";
  out << "fine = " << c.fine_n_side << "\n";
  out << "tau = " << format_double(c.tau) << "\n";
  out << "tau_rule = " << to_text(c.tau_rule) << "\n";
  out << "layers = " << join(c.layers, true) << "\n";
  out << "space = " << to_text(c.space) << "\n";
  out << "reference = " << to_text(c.reference) << "\n\n";
  out << "[solver]\n";
  out << "tolerance = " << format_double(c.tolerance) << "\n";
  out << "max_iterations = " << c.max_iterations << "\n";
  out << "energy_indexing = " << to_text(c.energy_indexing) << "\n";
}

}  // namespace lodnls
