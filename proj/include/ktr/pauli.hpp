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
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ktr {

using cplx = std::complex<double>;

inline constexpr int kMaxPauliQubits = 64;
inline constexpr int kDefaultDenseCap = 14;

/// Pauli operator i^phase_exp * prod_q X_q^{x_q} Z_q^{z_q} on n qubits.
///
/// Bit q of x()/z() refers to qubit q; qubit 0 is the leftmost tensor factor,
/// which maps to the most significant bit of a basis-state index.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint64_t x, std::uint64_t z, int phase_exp = 0);

  static PauliString identity(int n);
  /// Literal product of {I,X,Y,Z} factors, e.g. "XYZI". Always Hermitian.
  static PauliString from_label(std::string_view label);
  static PauliString single(int n, int qubit, char op);

  int num_qubits() const noexcept { return n_; }
  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t z() const noexcept { return z_; }
  int phase_exp() const noexcept { return phase_; }

  int y_count() const noexcept;
  int weight() const noexcept;
  bool is_hermitian() const noexcept;
  // True for i^k * I regardless of k.
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }

  /// k such that the operator equals i^k times the literal label product.
  int label_phase() const noexcept;
  std::string label() const;
  /// Same support, phase reset so the operator is the literal label product.
  PauliString literal() const;
  /// This string placed on qubits [offset, offset + n) of an n_total register.
  PauliString embedded(int n_total, int offset) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

/// (x_p . z_q + z_p . x_q) mod 2; 1 iff p and q anticommute.
int symplectic_product(const PauliString& p, const PauliString& q);
PauliString multiply(const PauliString& p, const PauliString& q);
/// p on the leading qubits, q on the trailing ones.
PauliString tensor(const PauliString& p, const PauliString& q);

struct PauliTerm {
  double coeff = 0.0;
  PauliString op;
};

/// Real-weighted sum of Hermitian Pauli strings.
///
/// Terms keep their insertion order; Trotter splitting relies on it. Each
/// stored string is in literal form with any sign folded into the coefficient.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n);
  PauliSum(int n, std::initializer_list<std::pair<double, std::string_view>> terms);

  void add(double coeff, const PauliString& op);
  void add(double coeff, std::string_view label);

  int num_qubits() const noexcept { return n_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  double one_norm() const;

  /// Equal strings merged (first occurrence keeps its slot), zero terms dropped.
  PauliSum normalized() const;

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// The Hermitian sum equal to i * H * T. Throws NotTimeReversal if a term
/// of h commutes with t.
PauliSum build_iht_observable(const PauliSum& h, const PauliString& t);

/// Basis-index mask for a qubit mask: qubit q -> index bit n-1-q.
std::uint64_t index_mask(std::uint64_t qubit_mask, int n);

Eigen::MatrixXcd dense_matrix(const PauliString& p, int cap = kDefaultDenseCap);
Eigen::MatrixXcd dense_matrix(const PauliSum& h, int cap = kDefaultDenseCap);

/// One term per line: `<coeff> <label>`. Blank lines and `#` comments are skipped.
std::string to_text(const PauliSum& h);
PauliSum parse_pauli_sum(std::string_view text);
PauliSum read_pauli_sum(const std::string& path);

std::ostream& operator<<(std::ostream& os, const PauliString& p);

}  // namespace ktr
