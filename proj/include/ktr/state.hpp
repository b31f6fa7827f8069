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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ktr/pauli.hpp"

namespace ktr {

inline constexpr int kMaxStateQubits = 26;

/// Unit-norm amplitude vector of length 2^n.
///
/// Basis index bit n-1-q holds qubit q, so qubit 0 is the most significant.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int n);

  static StateVector basis(int n, std::uint64_t index);
  static StateVector plus(int n);
  /// Haar-like random state from normal amplitudes.
  static StateVector random(int n, std::uint64_t seed);
  /// Normalizes amps; throws DegenerateProjection for a zero vector.
  static StateVector normalized(int n, std::vector<cplx> amps);
  /// amps must already have unit norm (checked to 1e-10).
  static StateVector adopt(int n, std::vector<cplx> amps);

  int num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

 private:
  StateVector(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {}

  int n_ = 0;
  std::vector<cplx> amps_;
};

cplx inner(const StateVector& a, const StateVector& b);
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector apply_pauli(const StateVector& s, const PauliString& p);
/// H|s> (not normalized).
std::vector<cplx> apply(const PauliSum& h, const StateVector& s);

cplx matrix_element(const StateVector& bra, const PauliString& p, const StateVector& ket);
cplx matrix_element(const StateVector& bra, const PauliSum& h, const StateVector& ket);

/// <s|O|s>; throws InternalInconsistency if the imaginary residue exceeds 1e-12 * max(1, |O|_1).
double expectation(const StateVector& s, const PauliSum& o);
double expectation(const StateVector& s, const PauliString& p);

// Gates used to replay small preparation circuits.
StateVector hadamard(const StateVector& s, int qubit);
StateVector cnot(const StateVector& s, int control, int target);

}  // namespace ktr
