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

#include <cstddef>
#include <variant>
#include <vector>

#include "ktr/gf2.hpp"
#include "ktr/pauli.hpp"

namespace ktr {

inline constexpr std::size_t kDefaultSolutionCap = 16;

/// Affine solution space of F t = 1 over GF(2), vectors laid out as (t_z | t_x).
struct SymmetrySolution {
  int n = 0;
  BitVector particular;
  std::vector<BitVector> nullspace_basis;
  std::size_t stripped_identity_terms = 0;

  std::size_t nullity() const noexcept { return nullspace_basis.size(); }
  /// particular + span(basis), in binary-counter order over the basis, at most cap entries.
  std::vector<BitVector> vectors(std::size_t cap = kDefaultSolutionCap) const;
  std::vector<PauliString> operators(std::size_t cap = kDefaultSolutionCap) const;
  /// Whether v lies in the affine space.
  bool contains(const BitVector& v) const;
};

/// Certificate of infeasibility: RREF of (F | 1) has a row (0...0 | 1).
struct Infeasible {
  std::size_t inconsistent_row = 0;
  std::size_t stripped_identity_terms = 0;
};

using SymmetryResult = std::variant<SymmetrySolution, Infeasible>;

/// One row (f_x | f_z) per term with nonzero coefficient.
BitMatrix build_parity_matrix(const PauliSum& h);

/// Identity terms are removed first; their count is reported in the result.
SymmetryResult solve_time_reversal(const PauliSum& h);

/// Hermitian involution with Z-support t[0..n) and X-support t[n..2n).
PauliString decode_t(const BitVector& t, int n);
BitVector encode_t(const PauliString& p);

/// t Hermitian, t^2 = I and t anticommutes with every nonzero term of h.
bool verify_time_reversal(const PauliString& t, const PauliSum& h);

}  // namespace ktr
