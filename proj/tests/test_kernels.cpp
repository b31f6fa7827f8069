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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ktr/errors.hpp"
#include "ktr/evolution.hpp"
#include "ktr/kernels.hpp"
#include "ktr/models.hpp"
#include "ktr/state.hpp"
#include "oracle.hpp"

namespace {

using ktr::kernels::cplx;
using ktr::kernels::KernelTable;

std::vector<cplx> random_vec(std::size_t len, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(len);
  for (auto& a : v) a = {g(rng), g(rng)};
  return v;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (ktr::kernels::avx2_table() == nullptr || !ktr::kernels::cpu_supports_avx2()) {
      GTEST_SKIP() << "AVX2 variant unavailable";
    }
  }
  const KernelTable& s = ktr::kernels::scalar_table();
  const KernelTable& v = *ktr::kernels::avx2_table();
};

TEST_F(KernelEquivalence, Reductions) {
  std::mt19937_64 rng(1);
  for (std::size_t len : {1u, 2u, 3u, 4u, 7u, 8u, 64u, 1000u, 4096u}) {
    const auto a = random_vec(len, rng), b = random_vec(len, rng);
    EXPECT_LT(rel(v.dot(a.data(), b.data(), len), s.dot(a.data(), b.data(), len)), 1e-13) << len;
    EXPECT_NEAR(v.norm_sq(a.data(), len), s.norm_sq(a.data(), len), 1e-13 * s.norm_sq(a.data(), len));
  }
}

TEST_F(KernelEquivalence, Elementwise) {
  std::mt19937_64 rng(2);
  for (std::size_t len : {1u, 3u, 8u, 33u, 1024u}) {
    const auto x = random_vec(len, rng), d = random_vec(len, rng);
    auto y1 = random_vec(len, rng), y2 = y1;
    s.axpby({0.3, -1.1}, x.data(), {0.7, 0.2}, y1.data(), len);
    v.axpby({0.3, -1.1}, x.data(), {0.7, 0.2}, y2.data(), len);
    EXPECT_LT(max_diff(y1, y2), 1e-14);
    s.scale({-0.4, 2.0}, y1.data(), len);
    v.scale({-0.4, 2.0}, y2.data(), len);
    EXPECT_LT(max_diff(y1, y2), 1e-13);
    s.multiply(d.data(), y1.data(), len);
    v.multiply(d.data(), y2.data(), len);
    EXPECT_LT(max_diff(y1, y2), 1e-12);
  }
}

TEST_F(KernelEquivalence, PauliOps) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 10; ++n) {
    const std::size_t len = std::size_t{1} << n;
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t xm = rng() & (len - 1), zm = rng() & (len - 1);
      const auto in = random_vec(len, rng), bra = random_vec(len, rng);
      std::vector<cplx> o1(len), o2(len);
      s.apply_pauli(in.data(), o1.data(), len, xm, zm, {0, -1});
      v.apply_pauli(in.data(), o2.data(), len, xm, zm, {0, -1});
      EXPECT_EQ(max_diff(o1, o2), 0.0) << n << " " << xm << " " << zm;
      EXPECT_LT(rel(v.pauli_element(bra.data(), in.data(), len, xm, zm),
                    s.pauli_element(bra.data(), in.data(), len, xm, zm)),
                1e-13);
    }
  }
}

TEST(Kernels, ScalarPauliMatchesDense) {
  std::mt19937_64 rng(4);
  const auto& s = ktr::kernels::scalar_table();
  for (int n = 1; n <= 5; ++n) {
    const ktr::PauliString p = oracle::random_string(n, rng, true);
    const auto in = random_vec(std::size_t{1} << n, rng);
    std::vector<cplx> out(in.size());
    s.apply_pauli(in.data(), out.data(), in.size(), ktr::index_mask(p.x(), n), ktr::index_mask(p.z(), n),
                  std::pow(cplx{0, 1}, p.phase_exp()));
    const Eigen::VectorXcd expect = oracle::kron_symplectic(p) * Eigen::Map<const Eigen::VectorXcd>(in.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_LT(std::abs(out[i] - expect[i]), 1e-14);
  }
}

TEST(Kernels, BackendSelection) {
  const auto before = ktr::kernels::active_backend();
  ktr::kernels::select_backend(ktr::kernels::Backend::Scalar);
  EXPECT_EQ(ktr::kernels::active().name, ktr::kernels::scalar_table().name);
  if (ktr::kernels::avx2_table() && ktr::kernels::cpu_supports_avx2()) {
    EXPECT_NO_THROW(ktr::kernels::select_backend(ktr::kernels::Backend::Avx2));
  } else {
    EXPECT_THROW(ktr::kernels::select_backend(ktr::kernels::Backend::Avx2), ktr::ResourceLimit);
  }
  ktr::kernels::select_backend(before);
}

TEST(Kernels, EvolutionAgreesAcrossBackends) {
  if (ktr::kernels::avx2_table() == nullptr || !ktr::kernels::cpu_supports_avx2()) GTEST_SKIP();
  const auto before = ktr::kernels::active_backend();
  const ktr::PauliSum h = ktr::build(ktr::ModelSpec{.kind = ktr::ModelKind::Tfim, .n = 8, .gamma = 0.8});
  const auto plan = ktr::EvolutionPlan::trotter2(h, 40);
  const auto phi = ktr::StateVector::random(8, 9);
  ktr::kernels::select_backend(ktr::kernels::Backend::Scalar);
  const auto a = plan.evolve(1.3, phi);
  const double ea = ktr::expectation(a, h);
  ktr::kernels::select_backend(ktr::kernels::Backend::Avx2);
  const auto b = plan.evolve(1.3, phi);
  const double eb = ktr::expectation(b, h);
  ktr::kernels::select_backend(before);
  EXPECT_LT(std::abs(ktr::inner(a, b) - cplx{1, 0}), 1e-12);
  EXPECT_NEAR(ea, eb, 1e-12);
}

}  // namespace
