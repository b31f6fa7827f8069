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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ktr/pauli.hpp"

namespace ktr {

enum class ModelKind { Tfim, Z2Higgs, Cluster, Heisenberg };

std::string_view model_tag(ModelKind k);
ModelKind parse_model_tag(std::string_view tag);

/// Open chains throughout. Unused parameters are ignored by build().
struct ModelSpec {
  ModelKind kind = ModelKind::Tfim;
  int n = 4;
  double gamma = 1.0;  // TFIM transverse field
  double mu = 1.0;     // Z2Higgs vertex field
  double g = 1.0;      // Z2Higgs link field
  double g_x = 1.0;    // cluster
  double g_zz = 1.0;
  double g_zxz = 1.0;
  double j_x = 1.0;  // Heisenberg
  double j_y = 1.0;
  double j_z = 1.0;

  void validate() const;
};

/// TFIM: -sum X_i X_{i+1} - gamma sum Z_i.
/// Z2Higgs: vertices on even qubits, links on odd ones; -Z_{l-1} Z_l Z_{l+1} for every link
///   with both neighbours, -mu X on vertices, -g X on links.
/// Cluster: -g_x sum X_i - g_zz sum Z_i Z_{i+1} + g_zxz sum Z_i X_{i+1} Z_{i+2}.
/// Heisenberg: -(1/2) sum (J_x XX + J_y YY + J_z ZZ).
/// Zero-coefficient terms are omitted.
PauliSum build(const ModelSpec& spec);

/// (YX)^{n/2} for TFIM, Y^n for Z2Higgs, (YZ)^{n/2} for Cluster, none for Heisenberg.
std::optional<PauliString> known_time_reversal(const ModelSpec& spec);

/// G_k = X_{left link} X_k X_{right link} for every vertex k. Vertex 0 takes the
/// last qubit (the dangling link) as its left link, so each G_k has odd weight
/// and anticommutes with Y^n. Throws ModelConsistency if a check fails.
std::vector<PauliSum> gauss_generators(const ModelSpec& spec);

}  // namespace ktr
