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

#include <bit>

#include "ktr/kernels.hpp"

namespace ktr::kernels {
namespace {

inline double sign_of(std::uint64_t zmask, std::uint64_t idx) { return (std::popcount(zmask & idx) & 1) ? -1.0 : 1.0; }

cplx dot(const cplx* a, const cplx* b, std::size_t len) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double norm_sq(const cplx* a, std::size_t len) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void axpby(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] = alpha * x[i] + beta * y[i];
}

void scale(cplx alpha, cplx* x, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) x[i] *= alpha;
}

void multiply(const cplx* d, cplx* x, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) x[i] *= d[i];
}

void apply_pauli(const cplx* in, cplx* out, std::size_t len, std::uint64_t xmask, std::uint64_t zmask,
                 cplx phase) {
  for (std::size_t r = 0; r < len; ++r) {
    const std::uint64_t src = r ^ xmask;
    out[r] = sign_of(zmask, src) * (phase * in[src]);
  }
}

cplx pauli_element(const cplx* bra, const cplx* ket, std::size_t len, std::uint64_t xmask, std::uint64_t zmask) {
  double re = 0.0, im = 0.0;
  for (std::size_t r = 0; r < len; ++r) {
    const std::uint64_t src = r ^ xmask;
    const double s = sign_of(zmask, src);
    const cplx k = ket[src];
    re += s * (bra[r].real() * k.real() + bra[r].imag() * k.imag());
    im += s * (bra[r].real() * k.imag() - bra[r].imag() * k.real());
  }
  return {re, im};
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", dot, norm_sq, axpby, scale, multiply, apply_pauli, pauli_element};
  return table;
}

}  // namespace ktr::kernels
