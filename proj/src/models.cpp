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

#include "ktr/models.hpp"

#include <cmath>
#include <string>

#include "ktr/errors.hpp"
#include "ktr/symmetry.hpp"

namespace ktr {
namespace {

std::string label_with(int n, std::initializer_list<std::pair<int, char>> ops) {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (const auto& [q, op] : ops) s[static_cast<std::size_t>(q)] = op;
  return s;
}

void add_if_nonzero(PauliSum& h, double coeff, const std::string& label) {
  if (coeff != 0.0) h.add(coeff, label);
}

std::string repeated(std::string_view unit, int n) {
  std::string s;
  while (static_cast<int>(s.size()) < n) s += unit;
  return s;
}

}  // namespace

std::string_view model_tag(ModelKind k) {
  switch (k) {
    case ModelKind::Tfim: return "tfim";
    case ModelKind::Z2Higgs: return "z2higgs";
    case ModelKind::Cluster: return "cluster";
    case ModelKind::Heisenberg: return "heisenberg";
  }
  return "unknown";
}

ModelKind parse_model_tag(std::string_view tag) {
  for (auto k : {ModelKind::Tfim, ModelKind::Z2Higgs, ModelKind::Cluster, ModelKind::Heisenberg}) {
    if (model_tag(k) == tag) return k;
  }
  throw ConfigError("unknown model kind '" + std::string(tag) + "'");
}

void ModelSpec::validate() const {
  if (n < 2 || n > kMaxPauliQubits) throw ConfigError("model size n must be in 2..64, got " + std::to_string(n));
  for (double p : {gamma, mu, g, g_x, g_zz, g_zxz, j_x, j_y, j_z}) {
    if (!std::isfinite(p)) throw ConfigError("model parameters must be finite");
  }
  switch (kind) {
    case ModelKind::Tfim:
      if (n % 2 != 0) throw ConfigError("TFIM needs even n, got " + std::to_string(n));
      break;
    case ModelKind::Z2Higgs:
      if (n % 2 != 0 || n < 4) throw ConfigError("Z2Higgs needs even n >= 4, got " + std::to_string(n));
      break;
    case ModelKind::Cluster:
      if (n % 2 != 0 || n < 4) throw ConfigError("cluster model needs even n >= 4, got " + std::to_string(n));
      break;
    case ModelKind::Heisenberg:
      break;
  }
}

PauliSum build(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n;
  PauliSum h(n);
  switch (spec.kind) {
    case ModelKind::Tfim:
      for (int i = 0; i + 1 < n; ++i) h.add(-1.0, label_with(n, {{i, 'X'}, {i + 1, 'X'}}));
      for (int i = 0; i < n; ++i) add_if_nonzero(h, -spec.gamma, label_with(n, {{i, 'Z'}}));
      break;
    case ModelKind::Z2Higgs:
      for (int l = 1; l + 1 < n; l += 2) h.add(-1.0, label_with(n, {{l - 1, 'Z'}, {l, 'Z'}, {l + 1, 'Z'}}));
      for (int k = 0; k < n; k += 2) add_if_nonzero(h, -spec.mu, label_with(n, {{k, 'X'}}));
      for (int l = 1; l < n; l += 2) add_if_nonzero(h, -spec.g, label_with(n, {{l, 'X'}}));
      break;
    case ModelKind::Cluster:
      for (int i = 0; i < n; ++i) add_if_nonzero(h, -spec.g_x, label_with(n, {{i, 'X'}}));
      for (int i = 0; i + 1 < n; ++i) add_if_nonzero(h, -spec.g_zz, label_with(n, {{i, 'Z'}, {i + 1, 'Z'}}));
      for (int i = 0; i + 2 < n; ++i) {
        add_if_nonzero(h, spec.g_zxz, label_with(n, {{i, 'Z'}, {i + 1, 'X'}, {i + 2, 'Z'}}));
      }
      break;
    case ModelKind::Heisenberg:
      for (int i = 0; i + 1 < n; ++i) {
        add_if_nonzero(h, -0.5 * spec.j_x, label_with(n, {{i, 'X'}, {i + 1, 'X'}}));
        add_if_nonzero(h, -0.5 * spec.j_y, label_with(n, {{i, 'Y'}, {i + 1, 'Y'}}));
        add_if_nonzero(h, -0.5 * spec.j_z, label_with(n, {{i, 'Z'}, {i + 1, 'Z'}}));
      }
      break;
  }
  if (h.empty()) throw ConfigError("model has no nonzero terms");
  return h;
}

std::optional<PauliString> known_time_reversal(const ModelSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ModelKind::Tfim: return PauliString::from_label(repeated("YX", spec.n));
    case ModelKind::Z2Higgs: return PauliString::from_label(repeated("Y", spec.n));
    case ModelKind::Cluster: return PauliString::from_label(repeated("YZ", spec.n));
    case ModelKind::Heisenberg: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<PauliSum> gauss_generators(const ModelSpec& spec) {
  if (spec.kind != ModelKind::Z2Higgs) throw ConfigError("Gauss generators exist only for the Z2Higgs model");
  const PauliSum h = build(spec);
  const int n = spec.n;
  const PauliString t = *known_time_reversal(spec);
  std::vector<PauliSum> out;
  for (int k = 0; k < n; k += 2) {
    const int left = k == 0 ? n - 1 : k - 1;
    PauliSum g(n);
    g.add(1.0, label_with(n, {{left, 'X'}, {k, 'X'}, {k + 1, 'X'}}));
    const PauliString& gk = g.terms().front().op;
    for (const auto& term : h.terms()) {
      if (symplectic_product(gk, term.op) != 0) {
        throw ModelConsistency("G_" + std::to_string(k) + " does not commute with term " + term.op.label());
      }
    }
    // Distinct strings are linearly independent, so the averaged sum anticommutes with T
    // exactly when every G_k does.
    if (symplectic_product(gk, t) != 1) {
      throw ModelConsistency("G_" + std::to_string(k) + " does not anticommute with T");
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace ktr
