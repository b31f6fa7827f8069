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

#include <span>
#include <vector>

#include "ktr/gf2.hpp"
#include "ktr/pauli.hpp"
#include "ktr/state.hpp"

namespace ktr {

inline constexpr double kProjectionFloor = 1e-12;

/// P_alpha = prod_b (I + (-1)^{alpha_b} T_b) / 2 with T = T_0 (x) T_1 (x) ...
struct ProjectorSpec {
  std::vector<PauliString> t_blocks;
  BitVector alpha;
  int n = 0;

  /// (-1)^{sum alpha}
  int parity() const;
  PauliString full_t() const;
  void validate() const;
};

struct PreparedState {
  StateVector state;
  int c = 1;
  double xi = 1.0;

  /// Projection probability 1/xi^2.
  double probability() const noexcept { return 1.0 / (xi * xi); }
};

/// Normalized P_alpha|phi>; throws DegenerateProjection below kProjectionFloor.
PreparedState project(const StateVector& phi, const ProjectorSpec& spec);
/// ||P_alpha|phi>||^2 without normalizing.
double projection_probability(const StateVector& phi, const ProjectorSpec& spec);

/// All 2^s sign patterns, pattern i has alpha_b = bit (s-1-b) of i.
std::vector<ProjectorSpec> enumerate_local_projectors(std::span<const PauliString> t_blocks);
/// T cut into s equal consecutive blocks.
std::vector<PauliString> split_blocks(const PauliString& t, int s);
ProjectorSpec global_projector(const PauliString& t, int alpha);

/// w0 = ((-1)^{r/4} |+>^r + |-+>^{r/2}) / sqrt(2); r must be a multiple of 4.
StateVector build_block_state_w0(int r);
/// w0 tensored s times on n = s r qubits.
StateVector w0_blocks(int n, int s);
/// The 4-qubit gate sequence on |1000>: H(0) H(1) H(3), CX(0,2), H(0) H(2).
StateVector w0_circuit_r4();

/// |+>^n projected with Y^n cut into s blocks, all signs +.
PreparedState build_lgt_initial(int n, int s);

/// c with T|s> = c|s>; throws NotTimeReversal if s is not stabilized within tol.
int stabilizer_sign(const StateVector& s, const PauliString& t, double tol = 1e-10);

}  // namespace ktr
