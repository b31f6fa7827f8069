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

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ktr/evolution.hpp"
#include "ktr/initial_states.hpp"
#include "ktr/pauli.hpp"
#include "ktr/state.hpp"

namespace ktr {

inline constexpr int kDefaultSamplesPerStep = 20;

enum class PencilMethod { Kqd, Ktr, Implicit, Local, Integral, Derivative };

std::string_view method_tag(PencilMethod m);
PencilMethod parse_method_tag(std::string_view tag);

/// t_j = j dt for j = 0..m-1 (zero-based here).
struct TimeGrid {
  double dt = 0.0;
  int m = 0;

  double time(int j) const noexcept { return j * dt; }
  double half_time(int j) const noexcept { return 0.5 * j * dt; }
  void validate() const;
};

/// pi / (2 sum_i |h_i|)
double default_time_step(const PauliSum& h);

/// First rows of the Hermitian-Toeplitz Krylov matrices A (Hamiltonian) and B (Gram).
struct ToeplitzPencil {
  PencilMethod method = PencilMethod::Kqd;
  TimeGrid grid;
  int c = 1;
  std::vector<cplx> row_a;
  std::vector<cplx> row_b;

  int size() const noexcept { return static_cast<int>(row_b.size()); }
  Eigen::MatrixXcd a() const;
  Eigen::MatrixXcd b() const;
  /// Leading m x m block.
  ToeplitzPencil prefix(int m) const;
};

/// M_ab = row[b-a] for b >= a and conj(row[a-b]) otherwise.
Eigen::MatrixXcd assemble_hermitian_toeplitz(std::span<const cplx> row);

struct KrylovOptions {
  unsigned threads = 0;  // 0 = hardware concurrency, 1 = serial
};

/// rowB[j] = <v0|v(t_j)>, rowA[j] = <v0|H|v(t_j)>.
ToeplitzPencil build_kqd(const PauliSum& h, const StateVector& v0, const TimeGrid& grid, const EvolutionPlan& plan,
                         const KrylovOptions& opts = {});

/// rowB[j] = c <v(h_j)|T|v(h_j)>, rowA[j] = i c <v(h_j)|iHT|v(h_j)> with h_j = t_j / 2.
ToeplitzPencil build_ktr(const PauliSum& h, const PauliString& t, const PreparedState& prepared, const TimeGrid& grid,
                         const EvolutionPlan& plan, const KrylovOptions& opts = {});

/// rowB[j] = Re<phi|U(t_j)|phi>, rowA[j] = i Im<phi|U(t_j) H|phi>, both from expectations
/// over P|phi> and P_perp|phi>. A branch whose probability is below kProjectionFloor has
/// zero weight and is skipped.
ToeplitzPencil implicit_hadamard_rows(const StateVector& phi, const PauliSum& h, const PauliString& t,
                                      const TimeGrid& grid, const EvolutionPlan& plan, const KrylovOptions& opts = {});

/// |<phi|U(tdiff)|phi>|^2
double magnitude_overlap(const StateVector& phi, double tdiff, const EvolutionPlan& plan);

/// Projectors sorted by descending probability on phi (ties keep enumeration order).
std::vector<ProjectorSpec> order_by_probability(const StateVector& phi, std::span<const ProjectorSpec> projectors);

/// sum_i p(alpha_i) <phi|P_i sqrt(U)^dag T sqrt(U) P_i|phi> over the first subset_size
/// projectors in probability order.
std::vector<cplx> extended_local_rows(const StateVector& phi, std::span<const ProjectorSpec> projectors,
                                      const PauliSum& h, const PauliString& t, const TimeGrid& grid,
                                      const EvolutionPlan& plan, std::size_t subset_size,
                                      const KrylovOptions& opts = {});

/// extended_local_rows for B together with the matching iHT combination for A.
ToeplitzPencil extended_local_pencil(const StateVector& phi, std::span<const ProjectorSpec> projectors,
                                     const PauliSum& h, const PauliString& t, const TimeGrid& grid,
                                     const EvolutionPlan& plan, std::size_t subset_size,
                                     const KrylovOptions& opts = {});

/// Uniform samples f(k * spacing), k = 0..(m-1) * per_step, of an expectation along v(tau).
struct FineSamples {
  double spacing = 0.0;
  int per_step = 0;
  std::vector<double> values;
};

/// a(tau) = <v(tau)|iHT|v(tau)>
FineSamples sample_iht(const PauliSum& h, const PauliString& t, const PreparedState& prepared, const TimeGrid& grid,
                       const EvolutionPlan& plan, int per_step = kDefaultSamplesPerStep,
                       const KrylovOptions& opts = {});
/// b(tau) = <v(tau)|T|v(tau)>
FineSamples sample_t(const PauliString& t, const PreparedState& prepared, const TimeGrid& grid,
                     const EvolutionPlan& plan, int per_step = kDefaultSamplesPerStep, const KrylovOptions& opts = {});

/// Composite Simpson rule over an even number of panels.
double composite_simpson(std::span<const double> f, double spacing);
/// Fourth-order finite-difference derivative at sample i; central where possible, one-sided at the ends.
double derivative_4th(std::span<const double> f, double spacing, std::size_t i);

/// rowB[j] = 1 + 2c int_0^{h_j} a.
std::vector<cplx> reconstruct_b_from_a(const FineSamples& a, int m, int c);
/// rowA[j] = i c b'(h_j) / 2.
std::vector<cplx> reconstruct_a_from_b(const FineSamples& b, int m, int c);

/// Direct KTR A with B from the integral relation.
ToeplitzPencil build_integral(const PauliSum& h, const PauliString& t, const PreparedState& prepared,
                              const TimeGrid& grid, const EvolutionPlan& plan, int per_step = kDefaultSamplesPerStep,
                              const KrylovOptions& opts = {});
/// Direct KTR B with A from the derivative relation.
ToeplitzPencil build_derivative(const PauliSum& h, const PauliString& t, const PreparedState& prepared,
                                const TimeGrid& grid, const EvolutionPlan& plan,
                                int per_step = kDefaultSamplesPerStep, const KrylovOptions& opts = {});

void write_pencil(std::ostream& os, const ToeplitzPencil& p);
ToeplitzPencil read_pencil(std::istream& is);

}  // namespace ktr
