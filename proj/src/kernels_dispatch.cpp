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

#include <atomic>
#include <cstdlib>
#include <string>

#include "ktr/errors.hpp"
#include "ktr/kernels.hpp"

namespace ktr::kernels {

#ifndef KTR_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_supports_avx2() {
#if defined(KTR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("KTR_KERNELS");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return &scalar_table();
  if ((choice == "auto" || choice == "avx2") && avx2_table() && cpu_supports_avx2()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Backend active_backend() { return &active() == &scalar_table() ? Backend::Scalar : Backend::Avx2; }

void select_backend(Backend b) {
  if (b == Backend::Scalar) {
    current().store(&scalar_table(), std::memory_order_release);
    return;
  }
  if (!avx2_table() || !cpu_supports_avx2()) throw ResourceLimit("AVX2 kernels unavailable on this machine");
  current().store(avx2_table(), std::memory_order_release);
}

}  // namespace ktr::kernels
