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
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ktr::kernels {

using cplx = std::complex<double>;

// Masks below are basis-index masks (see ktr::index_mask), not qubit masks.
struct KernelTable {
  std::string_view name;
  // sum_i conj(a_i) b_i
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t len);
  double (*norm_sq)(const cplx* a, std::size_t len);
  // y = alpha x + beta y
  void (*axpby)(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t len);
  void (*scale)(cplx alpha, cplx* x, std::size_t len);
  // x_i *= d_i
  void (*multiply)(const cplx* d, cplx* x, std::size_t len);
  // out_r = phase (-1)^{|zmask & (r^xmask)|} in_{r^xmask}; in and out must not alias.
  void (*apply_pauli)(const cplx* in, cplx* out, std::size_t len, std::uint64_t xmask, std::uint64_t zmask,
                      cplx phase);
  // sum_r conj(bra_r) (-1)^{|zmask & (r^xmask)|} ket_{r^xmask}; the string's phase is left to the caller.
  cplx (*pauli_element)(const cplx* bra, const cplx* ket, std::size_t len, std::uint64_t xmask,
                        std::uint64_t zmask);
};

enum class Backend { Scalar, Avx2 };

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in.
const KernelTable* avx2_table();
bool cpu_supports_avx2();

/// Table used by the state engine. Chosen once from the CPU and the
/// KTR_KERNELS environment variable (scalar | avx2 | auto).
const KernelTable& active();
Backend active_backend();
/// Throws ktr::ResourceLimit if the backend is unavailable on this machine.
void select_backend(Backend b);

}  // namespace ktr::kernels
