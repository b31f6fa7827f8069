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

#include <cmath>
#include <sstream>

#include "ktr/errors.hpp"
#include "ktr/gevp.hpp"
#include "ktr/krylov.hpp"
#include "ktr/models.hpp"
#include "oracle.hpp"

namespace {

using ktr::PauliString;
using ktr::PauliSum;
using ktr::StateVector;
using ktr::TimeGrid;
using oracle::cplx;

PauliSum tfim(int n, double gamma) {
  return ktr::build(ktr::ModelSpec{.kind = ktr::ModelKind::Tfim, .n = n, .gamma = gamma});
}

PauliString tfim_t(int n) { return *ktr::known_time_reversal(ktr::ModelSpec{.kind = ktr::ModelKind::Tfim, .n = n}); }

ktr::PreparedState w0_prepared(int n, int s) {
  const StateVector v = ktr::w0_blocks(n, s);
  return ktr::PreparedState{v, ktr::stabilizer_sign(v, tfim_t(n)), 1.0};
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Toeplitz, Assembly) {
  const std::vector<cplx> row{{1, 0}, {0.5, 0.25}, {0, -1}};
  const Eigen::MatrixXcd m = ktr::assemble_hermitian_toeplitz(row);
  EXPECT_EQ(m(0, 2), cplx(0, -1));
  EXPECT_EQ(m(2, 0), cplx(0, 1));
  EXPECT_EQ(m(1, 2), cplx(0.5, 0.25));
  EXPECT_EQ(oracle::max_abs(m - m.adjoint()), 0.0);
}

TEST(Kqd, SingleQubitClosedForm) {
  PauliSum h(1, {{1.0, "Z"}});
  const auto plan = ktr::EvolutionPlan::exact(h);
  const TimeGrid grid{0.3, 6};
  const auto p = ktr::build_kqd(h, StateVector::plus(1), grid, plan);
  for (int j = 0; j < grid.m; ++j) {
    EXPECT_LT(std::abs(p.row_b[j] - cplx(std::cos(j * 0.3), 0)), 1e-14);
    EXPECT_LT(std::abs(p.row_a[j] - cplx(0, -std::sin(j * 0.3))), 1e-14);
  }
}

TEST(Kqd, MatchesDoubleLoopOracle) {
  const PauliSum h = tfim(4, 0.8);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const StateVector v0 = StateVector::random(4, 2);
  const TimeGrid grid{0.4, 5};
  const auto p = ktr::build_kqd(h, v0, grid, plan);
  const Eigen::MatrixXcd dh = oracle::dense(h);
  std::vector<Eigen::VectorXcd> vs;
  for (int j = 0; j < grid.m; ++j) vs.push_back(oracle::expm_minus_i(dh, grid.time(j)) * oracle::vec(v0));
  Eigen::MatrixXcd a(grid.m, grid.m), b(grid.m, grid.m);
  for (int i = 0; i < grid.m; ++i)
    for (int j = 0; j < grid.m; ++j) {
      b(i, j) = vs[i].dot(vs[j]);
      a(i, j) = vs[i].dot(dh * vs[j]);
    }
  EXPECT_LT(oracle::max_abs(p.b() - b), 1e-12);
  EXPECT_LT(oracle::max_abs(p.a() - a), 1e-12);
}

TEST(Ktr, AgreesWithKqd) {
  const int n = 8;
  const PauliSum h = tfim(n, 0.5);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const auto prep = w0_prepared(n, 2);
  const TimeGrid grid{ktr::default_time_step(h), 12};
  const auto ktr_p = ktr::build_ktr(h, tfim_t(n), prep, grid, plan);
  const auto kqd_p = ktr::build_kqd(h, prep.state, grid, plan);
  EXPECT_LT(max_diff(ktr_p.row_b, kqd_p.row_b), 1e-11);
  EXPECT_LT(max_diff(ktr_p.row_a, kqd_p.row_a), 1e-11);
  EXPECT_EQ(ktr_p.row_a[0], cplx(0, 0));
  for (const auto& b : ktr_p.row_b) EXPECT_EQ(b.imag(), 0.0);
}

TEST(Ktr, NegativeStabilizerSign) {
  const int n = 4;
  const PauliSum h = tfim(n, 0.7);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const PauliString t = tfim_t(n);
  const auto prep = ktr::project(StateVector::random(n, 4), ktr::global_projector(t, 1));
  ASSERT_EQ(prep.c, -1);
  const TimeGrid grid{0.35, 6};
  EXPECT_LT(max_diff(ktr::build_ktr(h, t, prep, grid, plan).row_b, ktr::build_kqd(h, prep.state, grid, plan).row_b),
            1e-12);
  auto wrong = prep;
  wrong.c = 1;
  EXPECT_THROW(ktr::build_ktr(h, t, wrong, grid, plan), ktr::NotTimeReversal);
  EXPECT_THROW(ktr::build_ktr(h, PauliString::from_label("XXXX"), prep, grid, plan), ktr::NotTimeReversal);
}

TEST(Implicit, MatchesDenseRealAndImaginaryParts) {
  const int n = 6;
  const PauliSum h = ktr::build(ktr::ModelSpec{.kind = ktr::ModelKind::Cluster, .n = n});
  const PauliString t = *ktr::known_time_reversal(ktr::ModelSpec{.kind = ktr::ModelKind::Cluster, .n = n});
  const auto plan = ktr::EvolutionPlan::exact(h);
  const StateVector phi = StateVector::random(n, 11);
  const TimeGrid grid{0.27, 8};
  const auto p = ktr::implicit_hadamard_rows(phi, h, t, grid, plan);
  const Eigen::MatrixXcd dh = oracle::dense(h);
  const Eigen::VectorXcd v = oracle::vec(phi);
  for (int j = 0; j < grid.m; ++j) {
    const Eigen::MatrixXcd u = oracle::expm_minus_i(dh, grid.time(j));
    EXPECT_NEAR(p.row_b[j].real(), v.dot(u * v).real(), 1e-12);
    EXPECT_LT(std::abs(p.row_a[j] - cplx(0, v.dot(u * dh * v).imag())), 1e-12);
    EXPECT_NEAR(ktr::magnitude_overlap(phi, grid.time(j), plan), std::norm(v.dot(u * v)), 1e-12);
  }
}

TEST(Implicit, StabilizedInputSkipsEmptyBranch) {
  const PauliSum h = tfim(4, 0.5);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const auto prep = w0_prepared(4, 1);
  const TimeGrid grid{0.3, 4};
  const auto p = ktr::implicit_hadamard_rows(prep.state, h, tfim_t(4), grid, plan);
  EXPECT_LT(max_diff(p.row_b, ktr::build_kqd(h, prep.state, grid, plan).row_b), 1e-12);
}

class LocalPencil : public ::testing::Test {
 protected:
  static constexpr int n = 8;
  PauliSum h = tfim(n, 0.6);
  PauliString t = tfim_t(n);
  ktr::EvolutionPlan plan = ktr::EvolutionPlan::exact(h);
  StateVector phi = StateVector::random(n, 21);
  std::vector<ktr::ProjectorSpec> specs = ktr::enumerate_local_projectors(ktr::split_blocks(t, 2));
  TimeGrid grid{0.31, 6};

  Eigen::MatrixXcd dense_p(const ktr::ProjectorSpec& spec) const {
    const long dim = 1L << n;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
    int offset = 0;
    for (std::size_t b = 0; b < spec.t_blocks.size(); ++b) {
      const Eigen::MatrixXcd tb = oracle::kron_symplectic(spec.t_blocks[b].embedded(n, offset));
      offset += spec.t_blocks[b].num_qubits();
      p *= 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + (spec.alpha[b] ? -1.0 : 1.0) * tb);
    }
    return p;
  }
};

TEST_F(LocalPencil, FullSetMatchesDense) {
  const auto p = ktr::extended_local_pencil(phi, specs, h, t, grid, plan, specs.size());
  const Eigen::MatrixXcd dh = oracle::dense(h);
  const Eigen::VectorXcd v = oracle::vec(phi);
  for (int j = 0; j < grid.m; ++j) {
    const Eigen::MatrixXcd u = oracle::expm_minus_i(dh, grid.time(j));
    cplx rhs_b{}, rhs_a{};
    for (const auto& s : specs) {
      const Eigen::MatrixXcd pi = dense_p(s);
      rhs_b += v.dot(pi * u * pi * v);
      rhs_a += v.dot(pi * u * dh * pi * v);
    }
    EXPECT_NEAR(p.row_b[j].real(), rhs_b.real(), 1e-10);
    EXPECT_LT(std::abs(p.row_a[j] - cplx(0, rhs_a.imag())), 1e-10);
  }
}

TEST_F(LocalPencil, TruncationDeviates) {
  const auto full = ktr::extended_local_rows(phi, specs, h, t, grid, plan, specs.size());
  double prev = 0;
  for (std::size_t k = specs.size() - 1; k >= 1; --k) {
    const double dev = max_diff(ktr::extended_local_rows(phi, specs, h, t, grid, plan, k), full);
    EXPECT_GT(dev, prev);
    prev = dev;
  }
  EXPECT_THROW(ktr::extended_local_rows(phi, specs, h, t, grid, plan, 0), ktr::ConfigError);
}

TEST_F(LocalPencil, OrderedByProbability) {
  const auto ordered = ktr::order_by_probability(phi, specs);
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    EXPECT_GE(ktr::projection_probability(phi, ordered[i - 1]), ktr::projection_probability(phi, ordered[i]));
  }
}

TEST(Quadrature, SimpsonAndStencilOrders) {
  // integral of cos on [0, 1] and derivative of sin.
  for (int panels : {8, 16}) {
    const double hsp = 1.0 / panels;
    std::vector<double> f(panels + 1), g(panels + 1);
    for (int i = 0; i <= panels; ++i) {
      f[i] = std::cos(i * hsp);
      g[i] = std::sin(i * hsp);
    }
    const double err = std::abs(ktr::composite_simpson(f, hsp) - std::sin(1.0));
    EXPECT_LT(err, 2e-6 / std::pow(panels / 8.0, 4));
    for (int i = 0; i <= panels; ++i) EXPECT_NEAR(ktr::derivative_4th(g, hsp, i), std::cos(i * hsp), 1e-4 / std::pow(panels / 8.0, 4));
  }
  EXPECT_THROW(ktr::composite_simpson(std::vector<double>{1, 2}, 0.1), ktr::ConfigError);
  EXPECT_EQ(ktr::composite_simpson(std::vector<double>{1, 4, 1}, 1.0), 6.0);
}

TEST(Reconstruction, IntegralAndDerivativeRoutes) {
  const int n = 6;
  const PauliSum h = tfim(n, 0.5);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const PauliString t = tfim_t(n);
  const auto prep = ktr::project(StateVector::plus(n), ktr::global_projector(t, 0));
  const TimeGrid grid{ktr::default_time_step(h), 10};
  const auto direct = ktr::build_ktr(h, t, prep, grid, plan);
  double prev_b = 0, prev_a = 0;
  for (int per_step : {6, 12, 24}) {
    const auto integral = ktr::build_integral(h, t, prep, grid, plan, per_step);
    const auto deriv = ktr::build_derivative(h, t, prep, grid, plan, per_step);
    const double eb = max_diff(integral.row_b, direct.row_b), ea = max_diff(deriv.row_a, direct.row_a);
    // Both rules are fourth order: doubling the density should cut the error about 16x
    // (a little less for the derivative, whose far-end stencil is one-sided).
    if (prev_b > 0) {
      EXPECT_GT(prev_b / eb, 12.0) << per_step;
      EXPECT_GT(prev_a / ea, 10.0) << per_step;
    }
    if (per_step >= 12) {
      EXPECT_LT(eb, 1e-6);
      EXPECT_LT(ea, 1e-4);
    }
    prev_b = eb;
    prev_a = ea;
    EXPECT_EQ(integral.row_a, direct.row_a);
    EXPECT_EQ(deriv.row_b, direct.row_b);
    EXPECT_EQ(deriv.row_a[0], cplx(0, 0));
    EXPECT_NO_THROW(ktr::solve(deriv));
  }
  EXPECT_THROW(ktr::build_integral(h, t, prep, grid, plan, 3), ktr::ConfigError);
}

TEST(Pencil, DumpRoundTrip) {
  const PauliSum h = tfim(4, 0.5);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const auto p = ktr::build_kqd(h, StateVector::random(4, 1), TimeGrid{0.123456789, 7}, plan);
  std::stringstream ss;
  ktr::write_pencil(ss, p);
  const auto q = ktr::read_pencil(ss);
  EXPECT_EQ(q.row_a, p.row_a);
  EXPECT_EQ(q.row_b, p.row_b);
  EXPECT_EQ(q.grid.dt, p.grid.dt);
  EXPECT_EQ(q.method, p.method);
  std::stringstream bad("# ktr pencil\nmethod ktr\nm 2\n");
  EXPECT_THROW(ktr::read_pencil(bad), ktr::ConfigError);
}

TEST(Pencil, PrefixAndGrid) {
  const PauliSum h = tfim(4, 0.5);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const auto p = ktr::build_kqd(h, StateVector::random(4, 1), TimeGrid{0.2, 7}, plan);
  EXPECT_EQ(p.prefix(3).size(), 3);
  EXPECT_EQ(oracle::max_abs(p.prefix(3).b() - p.b().topLeftCorner(3, 3)), 0.0);
  EXPECT_THROW(p.prefix(8), ktr::DimensionMismatch);
  EXPECT_THROW(ktr::build_kqd(h, StateVector::random(4, 1), TimeGrid{0.2, 1}, plan), ktr::ConfigError);
  EXPECT_THROW(ktr::build_kqd(h, StateVector::random(4, 1), TimeGrid{-0.2, 4}, plan), ktr::ConfigError);
  EXPECT_DOUBLE_EQ(ktr::default_time_step(h), std::acos(-1.0) / (2.0 * (3.0 + 4 * 0.5)));
  EXPECT_EQ(ktr::parse_method_tag("derivative"), ktr::PencilMethod::Derivative);
  EXPECT_THROW(ktr::parse_method_tag("nope"), ktr::ConfigError);
}

TEST(Pencil, ThreadCountDoesNotChangeResults) {
  const int n = 8;
  const PauliSum h = tfim(n, 0.5);
  const auto plan = ktr::EvolutionPlan::exact(h);
  const auto prep = w0_prepared(n, 2);
  const TimeGrid grid{0.2, 16};
  const auto a = ktr::build_ktr(h, tfim_t(n), prep, grid, plan, {.threads = 1});
  const auto b = ktr::build_ktr(h, tfim_t(n), prep, grid, plan, {.threads = 5});
  EXPECT_EQ(a.row_a, b.row_a);
  EXPECT_EQ(a.row_b, b.row_b);
}

}  // namespace
