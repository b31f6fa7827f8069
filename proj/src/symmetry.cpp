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

#include "ktr/symmetry.hpp"

#include <string>

#include "ktr/errors.hpp"

namespace ktr {
namespace {

PauliSum strip_identity(const PauliSum& h, std::size_t& stripped) {
  PauliSum out(h.num_qubits());
  stripped = 0;
  for (const auto& t : h.terms()) {
    if (t.coeff == 0.0) continue;
    if (t.op.is_identity()) {
      ++stripped;
      continue;
    }
    out.add(t.coeff, t.op);
  }
  return out;
}

}  // namespace

std::vector<BitVector> SymmetrySolution::vectors(std::size_t cap) const {
  std::vector<BitVector> out;
  const std::size_t d = nullspace_basis.size();
  for (std::size_t k = 0; out.size() < cap; ++k) {
    if (d < 64 && k >> d) break;
    BitVector v = particular;
    for (std::size_t b = 0; b < d && b < 64; ++b) {
      if ((k >> b) & 1) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= nullspace_basis[b][i];
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<PauliString> SymmetrySolution::operators(std::size_t cap) const {
  std::vector<PauliString> out;
  for (const auto& v : vectors(cap)) out.push_back(decode_t(v, n));
  return out;
}

bool SymmetrySolution::contains(const BitVector& v) const {
  if (v.size() != particular.size()) return false;
  // Reduce v - particular against the basis; membership iff it vanishes.
  const std::size_t len = v.size();
  BitMatrix m(nullspace_basis.size() + 1, len);
  for (std::size_t b = 0; b < nullspace_basis.size(); ++b) {
    for (std::size_t i = 0; i < len; ++i) m.set(b, i, nullspace_basis[b][i]);
  }
  for (std::size_t i = 0; i < len; ++i) m.set(nullspace_basis.size(), i, v[i] ^ particular[i]);
  return rref(m).rank() == nullspace_basis.size();
}

BitMatrix build_parity_matrix(const PauliSum& h) {
  const int n = h.num_qubits();
  std::vector<const PauliTerm*> rows;
  for (const auto& t : h.terms()) {
    if (t.coeff != 0.0) rows.push_back(&t);
  }
  if (rows.empty()) throw ConfigError("Hamiltonian has no nonzero terms");
  BitMatrix f(rows.size(), 2 * static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int q = 0; q < n; ++q) {
      f.set(r, q, (rows[r]->op.x() >> q) & 1);
      f.set(r, n + q, (rows[r]->op.z() >> q) & 1);
    }
  }
  return f;
}

SymmetryResult solve_time_reversal(const PauliSum& h) {
  std::size_t stripped = 0;
  const PauliSum body = strip_identity(h, stripped);
  if (body.empty()) throw ConfigError("Hamiltonian has no non-identity terms");
  const int n = h.num_qubits();
  const std::size_t width = 2 * static_cast<std::size_t>(n);

  const BitMatrix f = build_parity_matrix(body);
  BitMatrix aug(f.rows(), width + 1);
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < width; ++c) aug.set(r, c, f.get(r, c));
    aug.set(r, width, true);
  }
  const RrefResult red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == width) {
    return Infeasible{red.pivots.size() - 1, stripped};
  }

  SymmetrySolution sol;
  sol.n = n;
  sol.stripped_identity_terms = stripped;
  sol.particular.assign(width, 0);
  std::vector<bool> is_pivot(width, false);
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    sol.particular[red.pivots[i]] = red.matrix.get(i, width);
    is_pivot[red.pivots[i]] = true;
  }
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    BitVector v(width, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = red.matrix.get(i, free);
    sol.nullspace_basis.push_back(std::move(v));
  }
  return sol;
}

PauliString decode_t(const BitVector& t, int n) {
  if (t.size() != 2 * static_cast<std::size_t>(n)) {
    throw DimensionMismatch("solution vector has length " + std::to_string(t.size()) + ", expected " +
                            std::to_string(2 * n));
  }
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    if (t[q]) z |= std::uint64_t{1} << q;
    if (t[n + q]) x |= std::uint64_t{1} << q;
  }
  return PauliString(n, x, z).literal();
}

BitVector encode_t(const PauliString& p) {
  const int n = p.num_qubits();
  BitVector t(2 * static_cast<std::size_t>(n), 0);
  for (int q = 0; q < n; ++q) {
    t[q] = (p.z() >> q) & 1;
    t[n + q] = (p.x() >> q) & 1;
  }
  return t;
}

bool verify_time_reversal(const PauliString& t, const PauliSum& h) {
  if (t.num_qubits() != h.num_qubits()) return false;
  if (!t.is_hermitian()) return false;
  const PauliString sq = multiply(t, t);
  if (!sq.is_identity() || sq.phase_exp() != 0) return false;
  for (const auto& term : h.terms()) {
    if (term.coeff != 0.0 && symplectic_product(t, term.op) != 1) return false;
  }
  return true;
}

}  // namespace ktr
