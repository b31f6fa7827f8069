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

#include "ktr/errors.hpp"
#include "ktr/pauli.hpp"
#include "oracle.hpp"

namespace {

using ktr::PauliString;
using ktr::PauliSum;
using oracle::cplx;

PauliString L(const char* s) { return PauliString::from_label(s); }

TEST(PauliString, LabelRoundTrip) {
  for (const char* s : {"I", "X", "Y", "Z", "XYZI", "YYYY", "IZXY"}) {
    EXPECT_EQ(L(s).label(), s);
    EXPECT_TRUE(L(s).is_hermitian());
    EXPECT_EQ(L(s).label_phase(), 0);
  }
  EXPECT_THROW(L("XQ"), ktr::ConfigError);
}

TEST(PauliString, SymplecticExamples) {
  EXPECT_EQ(ktr::symplectic_product(L("X"), L("Z")), 1);
  EXPECT_EQ(ktr::symplectic_product(L("X"), L("X")), 0);
  EXPECT_EQ(ktr::symplectic_product(L("YX"), L("XX")), 1);
  const Eigen::MatrixXcd a = oracle::kron_label("YX"), b = oracle::kron_label("XX");
  EXPECT_EQ(oracle::max_abs(a * b + b * a), 0.0);
  EXPECT_THROW(ktr::symplectic_product(L("X"), L("XX")), ktr::DimensionMismatch);
}

TEST(PauliString, MultiplyExamples) {
  const PauliString xz = ktr::multiply(L("X"), L("Z"));
  const Eigen::MatrixXcd minus_i_y = cplx{0, -1} * oracle::pauli('Y');
  EXPECT_EQ(oracle::max_abs(ktr::dense_matrix(xz) - minus_i_y), 0.0);
  EXPECT_EQ(xz.label(), "Y");
  EXPECT_EQ(xz.label_phase(), 3);

  for (const char* s : {"X", "Y", "Z", "YXZI", "YYYY"}) {
    const PauliString sq = ktr::multiply(L(s), L(s));
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(sq.phase_exp(), 0);
  }

  const PauliString r = ktr::multiply(L("YX"), L("XX"));
  EXPECT_EQ(r.label(), "ZI");
  EXPECT_EQ(r.label_phase(), 3);
  EXPECT_EQ(oracle::max_abs(ktr::dense_matrix(r) - oracle::kron_label("YX") * oracle::kron_label("XX")), 0.0);
}

TEST(PauliString, DenseExamples) {
  EXPECT_EQ(oracle::max_abs(ktr::dense_matrix(L("I")) - Eigen::Matrix2cd::Identity()), 0.0);
  Eigen::Matrix2cd y;
  y << 0, cplx{0, -1}, cplx{0, 1}, 0;
  EXPECT_EQ(oracle::max_abs(ktr::dense_matrix(L("Y")) - y), 0.0);

  PauliSum h(2);
  h.add(-1.0, "XX");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(ktr::dense_matrix(h));
  const Eigen::Vector4d expect(-1, -1, 1, 1);
  EXPECT_LT((eig.eigenvalues() - expect).cwiseAbs().maxCoeff(), 1e-14);

  EXPECT_THROW(ktr::dense_matrix(PauliString::identity(15)), ktr::ResourceLimit);
  EXPECT_NO_THROW(ktr::dense_matrix(PauliString::identity(3), 3));
  EXPECT_THROW(ktr::dense_matrix(PauliString::identity(4), 3), ktr::ResourceLimit);
}

TEST(PauliString, RandomizedAgainstKronecker) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    const PauliString p = oracle::random_string(n, rng), q = oracle::random_string(n, rng);
    const Eigen::MatrixXcd dp = ktr::dense_matrix(p), dq = ktr::dense_matrix(q);
    ASSERT_EQ(oracle::max_abs(dp - oracle::kron_symplectic(p)), 0.0);

    const Eigen::MatrixXcd anti = dp * dq + dq * dp, comm = dp * dq - dq * dp;
    if (ktr::symplectic_product(p, q)) {
      EXPECT_EQ(oracle::max_abs(anti), 0.0);
    } else {
      EXPECT_EQ(oracle::max_abs(comm), 0.0);
    }
    EXPECT_EQ(oracle::max_abs(ktr::dense_matrix(ktr::multiply(p, q)) - dp * dq), 0.0);

    const long dim = 1L << n;
    EXPECT_EQ(oracle::max_abs(dp * dp.adjoint() - Eigen::MatrixXcd::Identity(dim, dim)), 0.0);
    EXPECT_EQ(p.is_hermitian(), oracle::max_abs(dp - dp.adjoint()) == 0.0);
  }
}

TEST(PauliString, MultiplyIsAssociative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const PauliString a = oracle::random_string(n, rng), b = oracle::random_string(n, rng),
                      c = oracle::random_string(n, rng);
    EXPECT_EQ(ktr::multiply(ktr::multiply(a, b), c), ktr::multiply(a, ktr::multiply(b, c)));
  }
}

TEST(PauliString, TensorAndEmbed) {
  EXPECT_EQ(ktr::tensor(L("XY"), L("ZI")).label(), "XYZI");
  EXPECT_EQ(L("YZ").embedded(5, 2).label(), "IIYZI");
  EXPECT_THROW(L("YZ").embedded(3, 2), ktr::DimensionMismatch);
}

TEST(PauliSum, FoldsSignsAndRejectsNonHermitian) {
  PauliSum h(1);
  h.add(2.0, PauliString(1, 1, 1, 3));  // -Y
  EXPECT_EQ(h.terms()[0].coeff, -2.0);
  EXPECT_EQ(h.terms()[0].op, L("Y"));
  EXPECT_THROW(h.add(1.0, PauliString(1, 1, 1, 0)), ktr::InternalInconsistency);
  EXPECT_THROW(h.add(1.0, "XX"), ktr::DimensionMismatch);
}

TEST(PauliSum, NormalizeMergesInOrder) {
  PauliSum h(2, {{1.0, "XX"}, {2.0, "ZI"}, {-1.0, "XX"}, {0.5, "ZI"}, {3.0, "YY"}});
  const PauliSum n = h.normalized();
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n.terms()[0].op.label(), "ZI");
  EXPECT_EQ(n.terms()[0].coeff, 2.5);
  EXPECT_EQ(n.terms()[1].op.label(), "YY");
  EXPECT_EQ(h.size(), 5u);
}

TEST(PauliSum, DenseIsHermitian) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 6; ++n) {
    PauliSum h(n);
    for (int k = 0; k < 8; ++k) h.add(g(rng), oracle::random_label(n, rng));
    const Eigen::MatrixXcd m = ktr::dense_matrix(h);
    EXPECT_EQ(oracle::max_abs(m - m.adjoint()), 0.0);
    EXPECT_LT(oracle::max_abs(m - oracle::dense(h)), 1e-14);
  }
}

TEST(IhtObservable, SingleQubit) {
  PauliSum h(1, {{1.0, "X"}});
  const PauliSum iht = ktr::build_iht_observable(h, L("Z"));
  ASSERT_EQ(iht.size(), 1u);
  EXPECT_EQ(iht.terms()[0].op.label(), "Y");
  EXPECT_EQ(iht.terms()[0].coeff, 1.0);
}

TEST(IhtObservable, MatchesTfimExpansion) {
  const int n = 4;
  const double gamma = 0.7;
  PauliSum h(n);
  for (int i = 0; i + 1 < n; ++i) {
    std::string s(n, 'I');
    s[i] = s[i + 1] = 'X';
    h.add(-1.0, s);
  }
  for (int i = 0; i < n; ++i) {
    std::string s(n, 'I');
    s[i] = 'Z';
    h.add(-gamma, s);
  }
  const PauliString t = L("YXYX");
  const Eigen::MatrixXcd dt = oracle::kron_label("YXYX");
  Eigen::MatrixXcd expansion = Eigen::MatrixXcd::Zero(16, 16);
  for (int i = 0; i + 1 < n; ++i) {
    expansion += oracle::single(n, i, 'Z') * oracle::single(n, i, 'Y') * oracle::single(n, i + 1, 'X') * dt;
  }
  for (int i = 0; i < n; ++i) expansion += gamma * oracle::single(n, i, 'Y') * oracle::single(n, i, 'X') * dt;

  const Eigen::MatrixXcd got = ktr::dense_matrix(ktr::build_iht_observable(h, t));
  EXPECT_LT(oracle::max_abs(got - expansion), 1e-14);
  EXPECT_LT(oracle::max_abs(got - cplx{0, 1} * oracle::dense(h) * dt), 1e-14);
}

TEST(IhtObservable, RandomAnticommutingPairs) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4;
    const PauliString t = oracle::random_string(n, rng, true);
    if (t.is_identity()) continue;
    PauliSum h(n);
    while (h.size() < 5) {
      const PauliString p = oracle::random_string(n, rng, true);
      if (ktr::symplectic_product(p, t)) h.add(g(rng), p);
    }
    const PauliSum iht = ktr::build_iht_observable(h, t);
    const Eigen::MatrixXcd got = ktr::dense_matrix(iht);
    EXPECT_LT(oracle::max_abs(got - cplx{0, 1} * oracle::dense(h) * oracle::kron_symplectic(t)), 1e-14);
    EXPECT_EQ(oracle::max_abs(got - got.adjoint()), 0.0);
  }
}

TEST(IhtObservable, RejectsCommutingTerm) {
  PauliSum h(2, {{1.0, "XX"}, {1.0, "ZI"}});
  EXPECT_THROW(ktr::build_iht_observable(h, L("XX")), ktr::NotTimeReversal);
}

TEST(PauliText, RoundTripIsBitExact) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  PauliSum h(5);
  for (int k = 0; k < 50; ++k) h.add(k % 7 == 0 ? static_cast<double>(k - 20) : u(rng) * std::pow(10.0, k % 9 - 4),
                                     oracle::random_label(5, rng));
  const std::string text = ktr::to_text(h);
  const PauliSum back = ktr::parse_pauli_sum(text);
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(back.terms()[i].coeff, h.terms()[i].coeff);
    EXPECT_EQ(back.terms()[i].op, h.terms()[i].op);
  }
  EXPECT_EQ(ktr::to_text(back), text);
}

TEST(PauliText, FormatAndErrors) {
  PauliSum h(4, {{-1.0, "XXII"}, {0.25, "IZIZ"}});
  EXPECT_EQ(ktr::to_text(h), "-1.0 XXII\n0.25 IZIZ\n");
  const PauliSum p = ktr::parse_pauli_sum("# comment\n\n-1.0 XXII  # trailing\n  2 ZZZZ\n");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.terms()[1].coeff, 2.0);
  EXPECT_THROW(ktr::parse_pauli_sum("1.0 XX\n1.0 XXX\n"), ktr::ConfigError);
  EXPECT_THROW(ktr::parse_pauli_sum("abc XX\n"), ktr::ConfigError);
  EXPECT_THROW(ktr::parse_pauli_sum("1.0\n"), ktr::ConfigError);
  EXPECT_THROW(ktr::parse_pauli_sum("# nothing\n"), ktr::ConfigError);
}

}  // namespace
