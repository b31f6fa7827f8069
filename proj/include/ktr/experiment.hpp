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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ktr/evolution.hpp"
#include "ktr/gevp.hpp"
#include "ktr/gf2.hpp"
#include "ktr/krylov.hpp"
#include "ktr/models.hpp"

namespace ktr {

struct InitSpec {
  enum class Kind { Plus, W0Blocks, Project };
  Kind kind = Kind::Plus;
  int blocks = 1;   // w0-blocks:<s>
  BitVector alpha;  // project:<bits>
  std::string text = "plus";
};

struct MethodSpec {
  PencilMethod method = PencilMethod::Ktr;
  std::size_t subset = 0;  // local:<subset>
  std::string text = "ktr";
};

struct EvolutionSpec {
  EvolutionMode mode = EvolutionMode::Exact;
  double steps_per_unit = 0.0;
  std::string text = "exact";
};

enum class SymmetrySource { Known, Solver, Label };

struct ExperimentConfig {
  ModelSpec model;
  std::vector<MethodSpec> methods{MethodSpec{}};
  InitSpec init;
  std::optional<double> dt;  // nullopt = auto
  int m = 16;
  int samples_per_step = kDefaultSamplesPerStep;
  EvolutionSpec evolution;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  std::string output;
  SymmetrySource symmetry = SymmetrySource::Known;
  std::string symmetry_label;
  int local_blocks = 2;
  bool timing = true;
  unsigned threads = 0;
};

/// key -> (value, source line); line 0 marks a command-line override.
using ConfigEntries = std::map<std::string, std::pair<std::string, int>>;

ConfigEntries parse_config_entries(std::string_view text);
/// Validates every key and value; throws ConfigError naming the offending line.
ExperimentConfig resolve_config(const ConfigEntries& entries);
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

struct RunRecord {
  std::string method;
  int m = 0;
  double dt = 0.0;
  double estimate = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
  int kept_dim = 0;
  double wall_ms = 0.0;
};

struct RunReport {
  std::vector<RunRecord> records;
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// Prefix sizes 2, 4, ..., m (m appended when odd).
std::vector<int> prefix_sizes(int m);

RunReport run(const ExperimentConfig& config);

std::string format_table(const RunReport& report);
std::string format_provenance(const RunReport& report);
/// Writes the table to path and the provenance to path + ".provenance".
void emit(const RunReport& report, const std::string& path);

}  // namespace ktr
