// Copyright 2026 The ktr Authors
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

// Command-line front end: run experiments, search for time-reversal
// operators, dump exact spectra.

#include <cerrno>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "ktr/errors.hpp"
#include "ktr/experiment.hpp"
#include "ktr/gevp.hpp"
#include "ktr/symmetry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int cmd_run(const std::string& path, const std::vector<std::string>& overrides, const std::string& init,
            const std::string& method, const std::string& output) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), path);
  std::stringstream ss;
  ss << in.rdbuf();
  ktr::ConfigEntries entries = ktr::parse_config_entries(ss.str());
  auto set = [&](const std::string& key, const std::string& value) { entries[key] = {value, 0}; };
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ktr::ConfigError("--set expects key=value, got '" + kv + "'");
    set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!init.empty()) set("init", init);
  if (!method.empty()) set("method", method);
  if (!output.empty()) set("output", output);

  const ktr::ExperimentConfig cfg = ktr::resolve_config(entries);
  const ktr::RunReport report = ktr::run(cfg);
  if (cfg.output.empty()) {
    std::cout << ktr::format_table(report);
  } else {
    ktr::emit(report, cfg.output);
    std::cerr << "wrote " << cfg.output << " and " << cfg.output << ".provenance\n";
  }
  return kExitOk;
}

int cmd_find_symmetry(const std::string& path, std::size_t cap) {
  const ktr::PauliSum h = ktr::read_pauli_sum(path);
  const ktr::SymmetryResult res = ktr::solve_time_reversal(h);
  const std::size_t stripped = std::visit([](const auto& r) { return r.stripped_identity_terms; }, res);
  if (stripped > 0) std::cerr << "warning: ignored " << stripped << " identity term(s)\n";
  if (const auto* inf = std::get_if<ktr::Infeasible>(&res)) {
    std::cout << "INFEASIBLE\n";
    std::cerr << "inconsistent row " << inf->inconsistent_row << " in the reduced system\n";
    return kExitOk;
  }
  const auto& sol = std::get<ktr::SymmetrySolution>(res);
  for (const auto& t : sol.operators(cap)) std::cout << t.label() << '\n';
  std::cerr << "solution space dimension " << sol.nullity() << '\n';
  return kExitOk;
}

int cmd_spectrum(const std::string& path) {
  const ktr::PauliSum h = ktr::read_pauli_sum(path);
  char buf[40];
  for (double e : ktr::exact_reference(h)) {
    std::snprintf(buf, sizeof(buf), "%.17e", e);
    std::cout << buf << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov diagonalization with time-reversal symmetry"};
  app.require_subcommand(1);

  std::string config_path, init, method, output;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  run->add_option("config", config_path, "Config file (key = value lines)")->required();
  run->add_option("--init", init, "Override init: plus | w0-blocks:<s> | project:<bits>");
  run->add_option("--method", method, "Override method list");
  run->add_option("--output", output, "Override output path");
  run->add_option("--set", overrides, "Override any key: --set key=value");

  std::string ham_path;
  std::size_t cap = ktr::kDefaultSolutionCap;
  auto* find = app.add_subcommand("find-symmetry", "Solve for anticommuting Pauli involutions");
  find->add_option("hamiltonian", ham_path, "Pauli-sum file")->required();
  find->add_option("--cap", cap, "Maximum number of solutions printed");

  auto* spectrum = app.add_subcommand("spectrum", "Print the exact spectrum of a Pauli sum");
  spectrum->add_option("hamiltonian", ham_path, "Pauli-sum file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, overrides, init, method, output);
    if (*find) return cmd_find_symmetry(ham_path, cap);
    if (*spectrum) return cmd_spectrum(ham_path);
  } catch (const ktr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ktr::ResourceLimit& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ktr::DimensionMismatch& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ktr::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::system_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
