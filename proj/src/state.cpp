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

#include "ktr/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ktr/errors.hpp"
#include "ktr/kernels.hpp"

namespace ktr {
namespace {

const cplx kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_qubits(int n) {
  if (n < 1 || n > kMaxStateQubits) {
    throw ResourceLimit("state vectors support 1.." + std::to_string(kMaxStateQubits) + " qubits, got " +
                        std::to_string(n));
  }
}

void require_same(int a, int b) {
  if (a != b) throw DimensionMismatch("operands act on " + std::to_string(a) + " and " + std::to_string(b) + " qubits");
}

}  // namespace

StateVector::StateVector(int n) : n_(n) {
  check_qubits(n);
  amps_.assign(std::size_t{1} << n, cplx{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dim()) throw DimensionMismatch("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::plus(int n) {
  check_qubits(n);
  const double a = std::pow(2.0, -0.5 * n);
  return StateVector(n, std::vector<cplx>(std::size_t{1} << n, cplx{a, 0.0}));
}

StateVector StateVector::random(int n, std::uint64_t seed) {
  check_qubits(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> amps(std::size_t{1} << n);
  for (auto& a : amps) {
    const double re = g(rng);
    a = {re, g(rng)};
  }
  return normalized(n, std::move(amps));
}

StateVector StateVector::normalized(int n, std::vector<cplx> amps) {
  check_qubits(n);
  if (amps.size() != (std::size_t{1} << n)) throw DimensionMismatch("amplitude count is not 2^n");
  const auto& k = kernels::active();
  const double nrm = std::sqrt(k.norm_sq(amps.data(), amps.size()));
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw DegenerateProjection("cannot normalize a zero vector");
  k.scale(cplx{1.0 / nrm, 0.0}, amps.data(), amps.size());
  return StateVector(n, std::move(amps));
}

StateVector StateVector::adopt(int n, std::vector<cplx> amps) {
  check_qubits(n);
  if (amps.size() != (std::size_t{1} << n)) throw DimensionMismatch("amplitude count is not 2^n");
  StateVector s(n, std::move(amps));
  if (std::abs(s.norm() - 1.0) > 1e-10) {
    throw InternalInconsistency("state norm drifted to " + std::to_string(s.norm()));
  }
  return s;
}

double StateVector::norm() const { return std::sqrt(kernels::active().norm_sq(amps_.data(), amps_.size())); }

cplx inner(const StateVector& a, const StateVector& b) {
  require_same(a.num_qubits(), b.num_qubits());
  return kernels::active().dot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.num_qubits() + b.num_qubits();
  check_qubits(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  // a's qubits come first, so they occupy the high index bits.
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
  }
  return StateVector::normalized(n, std::move(amps));
}

StateVector apply_pauli(const StateVector& s, const PauliString& p) {
  require_same(s.num_qubits(), p.num_qubits());
  const int n = s.num_qubits();
  std::vector<cplx> out(s.dim());
  kernels::active().apply_pauli(s.amplitudes().data(), out.data(), s.dim(), index_mask(p.x(), n),
                                index_mask(p.z(), n), kPhases[p.phase_exp()]);
  return StateVector::adopt(n, std::move(out));
}

std::vector<cplx> apply(const PauliSum& h, const StateVector& s) {
  require_same(s.num_qubits(), h.num_qubits());
  const int n = s.num_qubits();
  const auto& k = kernels::active();
  std::vector<cplx> out(s.dim(), cplx{}), tmp(s.dim());
  for (const auto& t : h.terms()) {
    k.apply_pauli(s.amplitudes().data(), tmp.data(), s.dim(), index_mask(t.op.x(), n), index_mask(t.op.z(), n),
                  kPhases[t.op.phase_exp()]);
    k.axpby(cplx{t.coeff, 0.0}, tmp.data(), cplx{1.0, 0.0}, out.data(), out.size());
  }
  return out;
}

cplx matrix_element(const StateVector& bra, const PauliString& p, const StateVector& ket) {
  require_same(bra.num_qubits(), ket.num_qubits());
  require_same(bra.num_qubits(), p.num_qubits());
  const int n = bra.num_qubits();
  return kPhases[p.phase_exp()] * kernels::active().pauli_element(bra.amplitudes().data(), ket.amplitudes().data(),
                                                                   bra.dim(), index_mask(p.x(), n),
                                                                   index_mask(p.z(), n));
}

cplx matrix_element(const StateVector& bra, const PauliSum& h, const StateVector& ket) {
  require_same(bra.num_qubits(), h.num_qubits());
  cplx acc{};
  for (const auto& t : h.terms()) acc += t.coeff * matrix_element(bra, t.op, ket);
  return acc;
}

double expectation(const StateVector& s, const PauliSum& o) {
  const cplx v = matrix_element(s, o, s);
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, o.one_norm())) {
    throw InternalInconsistency("expectation has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

double expectation(const StateVector& s, const PauliString& p) {
  if (!p.is_hermitian()) throw InternalInconsistency("expectation of non-Hermitian string " + p.label());
  const cplx v = matrix_element(s, p, s);
  if (std::abs(v.imag()) > 1e-12) {
    throw InternalInconsistency("expectation has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

StateVector hadamard(const StateVector& s, int qubit) {
  const int n = s.num_qubits();
  if (qubit < 0 || qubit >= n) throw DimensionMismatch("qubit index out of range");
  const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<cplx> out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i & bit) continue;
    const cplx a = s[i], b = s[i | bit];
    out[i] = r * (a + b);
    out[i | bit] = r * (a - b);
  }
  return StateVector::adopt(n, std::move(out));
}

StateVector cnot(const StateVector& s, int control, int target) {
  const int n = s.num_qubits();
  if (control < 0 || control >= n || target < 0 || target >= n || control == target) {
    throw DimensionMismatch("invalid CNOT qubits");
  }
  const std::size_t cbit = std::size_t{1} << (n - 1 - control), tbit = std::size_t{1} << (n - 1 - target);
  std::vector<cplx> out(s.amplitudes().begin(), s.amplitudes().end());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(out[i], out[i | tbit]);
  }
  return StateVector::adopt(n, std::move(out));
}

}  // namespace ktr
