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

// Compiled with -mavx2 -mfma; only reached through the dispatch table after a
// CPU check. Keep std::complex arithmetic out of this file so no AVX-encoded
// inline instantiation can leak into scalar translation units.

#include <immintrin.h>

#include <bit>

#include "ktr/kernels.hpp"

namespace ktr::kernels {
namespace {

inline const double* dptr(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cplx* p) { return reinterpret_cast<double*>(p); }

inline __m256d swap_parts(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// (ar + i ai) * v for two packed complex numbers.
inline __m256d cmul_bcast(__m256d v, __m256d ar, __m256d ai) {
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swap_parts(v)));
}

inline __m256d sign_mask(bool neg0, bool neg1) {
  const double s0 = neg0 ? -0.0 : 0.0, s1 = neg1 ? -0.0 : 0.0;
  return _mm256_set_pd(s1, s1, s0, s0);
}

// ket entries at r^xmask and (r+1)^xmask for even r, signs applied.
inline __m256d gather_pair(const cplx* in, std::size_t r, std::uint64_t xmask, std::uint64_t zmask) {
  const std::uint64_t s0 = r ^ xmask, s1 = (r + 1) ^ xmask;
  __m256d v;
  if ((xmask & 1) == 0) {
    v = _mm256_loadu_pd(dptr(in + s0));
  } else {
    v = _mm256_loadu_pd(dptr(in + s1));
    v = _mm256_permute2f128_pd(v, v, 0x01);
  }
  return _mm256_xor_pd(v, sign_mask(std::popcount(zmask & s0) & 1, std::popcount(zmask & s1) & 1));
}

inline void reduce_dot(__m256d acc_re, __m256d acc_im, double& re, double& im) {
  alignas(32) double r[4], i[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(i, acc_im);
  re = (r[0] + r[1]) + (r[2] + r[3]);
  im = (i[0] - i[1]) + (i[2] - i[3]);
}

cplx dot(const cplx* a, const cplx* b, std::size_t len) {
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d va = _mm256_loadu_pd(dptr(a + i)), vb = _mm256_loadu_pd(dptr(b + i));
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, swap_parts(vb), acc_im);
  }
  double re, im;
  reduce_dot(acc_re, acc_im, re, im);
  for (; i < len; ++i) {
    const double ar = dptr(a)[2 * i], ai = dptr(a)[2 * i + 1], br = dptr(b)[2 * i], bi = dptr(b)[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_sq(const cplx* a, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d v = _mm256_loadu_pd(dptr(a + i));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double out = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < len; ++i) out += dptr(a)[2 * i] * dptr(a)[2 * i] + dptr(a)[2 * i + 1] * dptr(a)[2 * i + 1];
  return out;
}

void axpby(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t len) {
  const double alr = reinterpret_cast<const double*>(&alpha)[0], ali = reinterpret_cast<const double*>(&alpha)[1];
  const double ber = reinterpret_cast<const double*>(&beta)[0], bei = reinterpret_cast<const double*>(&beta)[1];
  const __m256d ar = _mm256_set1_pd(alr), ai = _mm256_set1_pd(ali);
  const __m256d br = _mm256_set1_pd(ber), bi = _mm256_set1_pd(bei);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d vx = _mm256_loadu_pd(dptr(x + i)), vy = _mm256_loadu_pd(dptr(y + i));
    _mm256_storeu_pd(dptr(y + i), _mm256_add_pd(cmul_bcast(vx, ar, ai), cmul_bcast(vy, br, bi)));
  }
  for (; i < len; ++i) {
    const double xr = dptr(x)[2 * i], xi = dptr(x)[2 * i + 1], yr = dptr(y)[2 * i], yi = dptr(y)[2 * i + 1];
    dptr(y)[2 * i] = (alr * xr - ali * xi) + (ber * yr - bei * yi);
    dptr(y)[2 * i + 1] = (alr * xi + ali * xr) + (ber * yi + bei * yr);
  }
}

void scale(cplx alpha, cplx* x, std::size_t len) {
  const double alr = reinterpret_cast<const double*>(&alpha)[0], ali = reinterpret_cast<const double*>(&alpha)[1];
  const __m256d ar = _mm256_set1_pd(alr), ai = _mm256_set1_pd(ali);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    _mm256_storeu_pd(dptr(x + i), cmul_bcast(_mm256_loadu_pd(dptr(x + i)), ar, ai));
  }
  for (; i < len; ++i) {
    const double xr = dptr(x)[2 * i], xi = dptr(x)[2 * i + 1];
    dptr(x)[2 * i] = alr * xr - ali * xi;
    dptr(x)[2 * i + 1] = alr * xi + ali * xr;
  }
}

void multiply(const cplx* d, cplx* x, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d vd = _mm256_loadu_pd(dptr(d + i)), vx = _mm256_loadu_pd(dptr(x + i));
    const __m256d dr = _mm256_movedup_pd(vd), di = _mm256_permute_pd(vd, 0b1111);
    _mm256_storeu_pd(dptr(x + i), _mm256_fmaddsub_pd(dr, vx, _mm256_mul_pd(di, swap_parts(vx))));
  }
  for (; i < len; ++i) {
    const double dr = dptr(d)[2 * i], di = dptr(d)[2 * i + 1], xr = dptr(x)[2 * i], xi = dptr(x)[2 * i + 1];
    dptr(x)[2 * i] = dr * xr - di * xi;
    dptr(x)[2 * i + 1] = dr * xi + di * xr;
  }
}

void apply_pauli(const cplx* in, cplx* out, std::size_t len, std::uint64_t xmask, std::uint64_t zmask,
                 cplx phase) {
  const double pr = reinterpret_cast<const double*>(&phase)[0], pi = reinterpret_cast<const double*>(&phase)[1];
  const __m256d ar = _mm256_set1_pd(pr), ai = _mm256_set1_pd(pi);
  std::size_t r = 0;
  for (; r + 2 <= len; r += 2) {
    _mm256_storeu_pd(dptr(out + r), cmul_bcast(gather_pair(in, r, xmask, zmask), ar, ai));
  }
  for (; r < len; ++r) {
    const std::uint64_t src = r ^ xmask;
    const double s = (std::popcount(zmask & src) & 1) ? -1.0 : 1.0;
    const double vr = s * dptr(in)[2 * src], vi = s * dptr(in)[2 * src + 1];
    dptr(out)[2 * r] = pr * vr - pi * vi;
    dptr(out)[2 * r + 1] = pr * vi + pi * vr;
  }
}

cplx pauli_element(const cplx* bra, const cplx* ket, std::size_t len, std::uint64_t xmask, std::uint64_t zmask) {
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
  std::size_t r = 0;
  for (; r + 2 <= len; r += 2) {
    const __m256d va = _mm256_loadu_pd(dptr(bra + r));
    const __m256d vb = gather_pair(ket, r, xmask, zmask);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, swap_parts(vb), acc_im);
  }
  double re, im;
  reduce_dot(acc_re, acc_im, re, im);
  for (; r < len; ++r) {
    const std::uint64_t src = r ^ xmask;
    const double s = (std::popcount(zmask & src) & 1) ? -1.0 : 1.0;
    const double ar = dptr(bra)[2 * r], ai = dptr(bra)[2 * r + 1];
    const double br = s * dptr(ket)[2 * src], bi = s * dptr(ket)[2 * src + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", dot, norm_sq, axpby, scale, multiply, apply_pauli, pauli_element};
  return &table;
}

}  // namespace ktr::kernels
