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

#include "ktr/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "ktr/errors.hpp"
#include "ktr/parallel.hpp"
#include "ktr/symmetry.hpp"

namespace ktr {
namespace {

constexpr cplx kI{0.0, 1.0};

// A stabilized state evolved along h, contributing weight * <v|T|v> to rowB
// and i * weight * <v|iHT|v> to rowA.
struct Branch {
  const StateVector* state;
  double weight;
};

void expectation_rows(std::span<const Branch> branches, const PauliString& t, const PauliSum& iht,
                      const TimeGrid& grid, const EvolutionPlan& plan, const KrylovOptions& opts,
                      std::vector<cplx>& row_a, std::vector<cplx>& row_b) {
  row_a.assign(static_cast<std::size_t>(grid.m), cplx{});
  row_b.assign(static_cast<std::size_t>(grid.m), cplx{});
  detail::parallel_for(static_cast<std::size_t>(grid.m), opts.threads, [&](std::size_t j) {
    double b = 0.0, a = 0.0;
    for (const Branch& br : branches) {
      const StateVector v = plan.evolve(grid.half_time(static_cast<int>(j)), *br.state);
      b += br.weight * expectation(v, t);
      a += br.weight * expectation(v, iht);
    }
    row_b[j] = b;
    row_a[j] = kI * a;
  });
}

void require_time_reversal(const PauliString& t, const PauliSum& h) {
  if (!verify_time_reversal(t, h)) {
    throw NotTimeReversal("T = " + t.label() + " is not an anticommuting Hermitian involution for H");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

FineSamples sample_expectation(const PreparedState& prepared, const TimeGrid& grid, const EvolutionPlan& plan,
                               int per_step, const KrylovOptions& opts,
                               const std::function<double(const StateVector&)>& f) {
  grid.validate();
  if (per_step < 2 || per_step % 2 != 0) {
    throw ConfigError("samples per Krylov step must be even and at least 2, got " + std::to_string(per_step));
  }
  FineSamples out;
  out.per_step = per_step;
  out.spacing = 0.5 * grid.dt / per_step;
  out.values.resize(static_cast<std::size_t>(grid.m - 1) * per_step + 1);
  detail::parallel_for(out.values.size(), opts.threads, [&](std::size_t k) {
    out.values[k] = f(plan.evolve(static_cast<double>(k) * out.spacing, prepared.state));
  });
  return out;
}

void check_fine_grid(const FineSamples& s, int m) {
  if (m < 1) throw ConfigError("need at least one Krylov index");
  if (s.per_step < 1 || s.values.size() < static_cast<std::size_t>(m - 1) * s.per_step + 1) {
    throw ConfigError("insufficient fine samples for " + std::to_string(m) + " Krylov indices");
  }
}

}  // namespace

std::string_view method_tag(PencilMethod m) {
  switch (m) {
    case PencilMethod::Kqd: return "kqd";
    case PencilMethod::Ktr: return "ktr";
    case PencilMethod::Implicit: return "implicit";
    case PencilMethod::Local: return "local";
    case PencilMethod::Integral: return "integral";
    case PencilMethod::Derivative: return "derivative";
  }
  return "unknown";
}

PencilMethod parse_method_tag(std::string_view tag) {
  for (auto m : {PencilMethod::Kqd, PencilMethod::Ktr, PencilMethod::Implicit, PencilMethod::Local,
                 PencilMethod::Integral, PencilMethod::Derivative}) {
    if (method_tag(m) == tag) return m;
  }
  throw ConfigError("unknown method '" + std::string(tag) + "'");
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive and finite");
  if (m < 2) throw ConfigError("Krylov dimension m must be at least 2, got " + std::to_string(m));
}

double default_time_step(const PauliSum& h) {
  const double norm = h.one_norm();
  if (!(norm > 0.0)) throw ConfigError("default time step undefined for a zero Hamiltonian");
  return std::numbers::pi / (2.0 * norm);
}

Eigen::MatrixXcd assemble_hermitian_toeplitz(std::span<const cplx> row) {
  const auto m = static_cast<Eigen::Index>(row.size());
  Eigen::MatrixXcd out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      out(a, b) = b >= a ? row[static_cast<std::size_t>(b - a)] : std::conj(row[static_cast<std::size_t>(a - b)]);
    }
  }
  return out;
}

Eigen::MatrixXcd ToeplitzPencil::a() const { return assemble_hermitian_toeplitz(row_a); }

Eigen::MatrixXcd ToeplitzPencil::b() const { return assemble_hermitian_toeplitz(row_b); }

ToeplitzPencil ToeplitzPencil::prefix(int m) const {
  if (m < 1 || m > size()) throw DimensionMismatch("prefix size " + std::to_string(m) + " out of range");
  ToeplitzPencil p = *this;
  p.grid.m = m;
  p.row_a.resize(static_cast<std::size_t>(m));
  p.row_b.resize(static_cast<std::size_t>(m));
  return p;
}

ToeplitzPencil build_kqd(const PauliSum& h, const StateVector& v0, const TimeGrid& grid, const EvolutionPlan& plan,
                         const KrylovOptions& opts) {
  grid.validate();
  ToeplitzPencil p{PencilMethod::Kqd, grid, 1, std::vector<cplx>(static_cast<std::size_t>(grid.m)),
                   std::vector<cplx>(static_cast<std::size_t>(grid.m))};
  detail::parallel_for(static_cast<std::size_t>(grid.m), opts.threads, [&](std::size_t j) {
    const StateVector v = plan.evolve(grid.time(static_cast<int>(j)), v0);
    p.row_b[j] = inner(v0, v);
    p.row_a[j] = matrix_element(v0, h, v);
  });
  return p;
}

ToeplitzPencil build_ktr(const PauliSum& h, const PauliString& t, const PreparedState& prepared, const TimeGrid& grid,
                         const EvolutionPlan& plan, const KrylovOptions& opts) {
  grid.validate();
  require_time_reversal(t, h);
  if (prepared.c != 1 && prepared.c != -1) throw ConfigError("stabilizer sign must be +1 or -1");
  if (stabilizer_sign(prepared.state, t) != prepared.c) {
    throw NotTimeReversal("initial state has stabilizer sign opposite to the declared c");
  }
  const PauliSum iht = build_iht_observable(h, t);
  ToeplitzPencil p{PencilMethod::Ktr, grid, prepared.c, {}, {}};
  const Branch branch{&prepared.state, static_cast<double>(prepared.c)};
  expectation_rows({&branch, 1}, t, iht, grid, plan, opts, p.row_a, p.row_b);
  // <v0|H|v0> is real and purely imaginary at once.
  if (std::abs(p.row_a[0]) > 1e-10 * std::max(1.0, h.one_norm())) {
    throw InternalInconsistency("diagonal of A does not vanish: " + format_double(std::abs(p.row_a[0])));
  }
  p.row_a[0] = 0.0;
  return p;
}

ToeplitzPencil implicit_hadamard_rows(const StateVector& phi, const PauliSum& h, const PauliString& t,
                                      const TimeGrid& grid, const EvolutionPlan& plan, const KrylovOptions& opts) {
  grid.validate();
  require_time_reversal(t, h);
  const ProjectorSpec plus = global_projector(t, 0), minus = global_projector(t, 1);
  const double w = projection_probability(phi, plus);
  const double w_perp = projection_probability(phi, minus);
  std::vector<PreparedState> prepared;
  std::vector<double> weights;
  if (w >= kProjectionFloor) {
    prepared.push_back(project(phi, plus));
    weights.push_back(w);
  }
  if (w_perp >= kProjectionFloor) {
    prepared.push_back(project(phi, minus));
    weights.push_back(-(1.0 - w));
  }
  std::vector<Branch> branches;
  for (std::size_t i = 0; i < prepared.size(); ++i) branches.push_back({&prepared[i].state, weights[i]});

  const PauliSum iht = build_iht_observable(h, t);
  ToeplitzPencil p{PencilMethod::Implicit, grid, 1, {}, {}};
  expectation_rows(branches, t, iht, grid, plan, opts, p.row_a, p.row_b);
  return p;
}

double magnitude_overlap(const StateVector& phi, double tdiff, const EvolutionPlan& plan) {
  return std::norm(inner(phi, plan.evolve(tdiff, phi)));
}

std::vector<ProjectorSpec> order_by_probability(const StateVector& phi, std::span<const ProjectorSpec> projectors) {
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t i = 0; i < projectors.size(); ++i) keyed.emplace_back(projection_probability(phi, projectors[i]), i);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<ProjectorSpec> out;
  for (const auto& [prob, i] : keyed) out.push_back(projectors[i]);
  return out;
}

ToeplitzPencil extended_local_pencil(const StateVector& phi, std::span<const ProjectorSpec> projectors,
                                     const PauliSum& h, const PauliString& t, const TimeGrid& grid,
                                     const EvolutionPlan& plan, std::size_t subset_size, const KrylovOptions& opts) {
  grid.validate();
  require_time_reversal(t, h);
  if (projectors.empty()) throw ConfigError("empty projector set");
  if (subset_size < 1 || subset_size > projectors.size()) {
    throw ConfigError("projector subset size " + std::to_string(subset_size) + " outside 1.." +
                      std::to_string(projectors.size()));
  }
  for (const auto& spec : projectors) {
    if (spec.full_t().literal() != t.literal()) {
      throw ConfigError("projector blocks do not multiply to T = " + t.label());
    }
  }
  const auto ordered = order_by_probability(phi, projectors);
  std::vector<PreparedState> prepared;
  std::vector<double> weights;
  for (std::size_t i = 0; i < subset_size; ++i) {
    const double prob = projection_probability(phi, ordered[i]);
    if (prob < kProjectionFloor) continue;
    prepared.push_back(project(phi, ordered[i]));
    weights.push_back(ordered[i].parity() * prob);
  }
  std::vector<Branch> branches;
  for (std::size_t i = 0; i < prepared.size(); ++i) branches.push_back({&prepared[i].state, weights[i]});

  const PauliSum iht = build_iht_observable(h, t);
  ToeplitzPencil p{PencilMethod::Local, grid, 1, {}, {}};
  expectation_rows(branches, t, iht, grid, plan, opts, p.row_a, p.row_b);
  return p;
}

std::vector<cplx> extended_local_rows(const StateVector& phi, std::span<const ProjectorSpec> projectors,
                                      const PauliSum& h, const PauliString& t, const TimeGrid& grid,
                                      const EvolutionPlan& plan, std::size_t subset_size, const KrylovOptions& opts) {
  return extended_local_pencil(phi, projectors, h, t, grid, plan, subset_size, opts).row_b;
}

FineSamples sample_iht(const PauliSum& h, const PauliString& t, const PreparedState& prepared, const TimeGrid& grid,
                       const EvolutionPlan& plan, int per_step, const KrylovOptions& opts) {
  require_time_reversal(t, h);
  const PauliSum iht = build_iht_observable(h, t);
  return sample_expectation(prepared, grid, plan, per_step, opts,
                            [&](const StateVector& v) { return expectation(v, iht); });
}

FineSamples sample_t(const PauliString& t, const PreparedState& prepared, const TimeGrid& grid,
                     const EvolutionPlan& plan, int per_step, const KrylovOptions& opts) {
  return sample_expectation(prepared, grid, plan, per_step, opts,
                            [&](const StateVector& v) { return expectation(v, t); });
}

double composite_simpson(std::span<const double> f, double spacing) {
  if (f.empty()) throw ConfigError("Simpson rule needs at least one sample");
  const std::size_t panels = f.size() - 1;
  if (panels % 2 != 0) throw ConfigError("Simpson rule needs an even number of panels");
  if (panels == 0) return 0.0;
  double s = f.front() + f.back();
  for (std::size_t i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  return s * spacing / 3.0;
}

double derivative_4th(std::span<const double> f, double spacing, std::size_t i) {
  if (f.size() < 5) throw ConfigError("grid too coarse for a fourth-order derivative");
  if (i >= f.size()) throw DimensionMismatch("derivative index out of range");
  if (i >= 2 && i + 2 < f.size()) {
    return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * spacing);
  }
  if (i + 4 < f.size()) {
    return (-25.0 * f[i] + 48.0 * f[i + 1] - 36.0 * f[i + 2] + 16.0 * f[i + 3] - 3.0 * f[i + 4]) / (12.0 * spacing);
  }
  return (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] + 3.0 * f[i - 4]) / (12.0 * spacing);
}

std::vector<cplx> reconstruct_b_from_a(const FineSamples& a, int m, int c) {
  check_fine_grid(a, m);
  if (a.per_step % 2 != 0) throw ConfigError("Simpson reconstruction needs an even sample count per step");
  std::vector<cplx> row(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const std::span<const double> upto(a.values.data(), static_cast<std::size_t>(j) * a.per_step + 1);
    row[static_cast<std::size_t>(j)] = 1.0 + 2.0 * c * composite_simpson(upto, a.spacing);
  }
  return row;
}

std::vector<cplx> reconstruct_a_from_b(const FineSamples& b, int m, int c) {
  check_fine_grid(b, m);
  std::vector<cplx> row(static_cast<std::size_t>(m));
  // b is real and even in the half time, so b'(0) = 0; a one-sided stencil there would only add error.
  for (int j = 1; j < m; ++j) {
    const std::size_t i = static_cast<std::size_t>(j) * b.per_step;
    row[static_cast<std::size_t>(j)] = kI * (0.5 * c * derivative_4th(b.values, b.spacing, i));
  }
  return row;
}

ToeplitzPencil build_integral(const PauliSum& h, const PauliString& t, const PreparedState& prepared,
                              const TimeGrid& grid, const EvolutionPlan& plan, int per_step,
                              const KrylovOptions& opts) {
  ToeplitzPencil p = build_ktr(h, t, prepared, grid, plan, opts);
  p.method = PencilMethod::Integral;
  p.row_b = reconstruct_b_from_a(sample_iht(h, t, prepared, grid, plan, per_step, opts), grid.m, prepared.c);
  return p;
}

ToeplitzPencil build_derivative(const PauliSum& h, const PauliString& t, const PreparedState& prepared,
                                const TimeGrid& grid, const EvolutionPlan& plan, int per_step,
                                const KrylovOptions& opts) {
  ToeplitzPencil p = build_ktr(h, t, prepared, grid, plan, opts);
  p.method = PencilMethod::Derivative;
  p.row_a = reconstruct_a_from_b(sample_t(t, prepared, grid, plan, per_step, opts), grid.m, prepared.c);
  return p;
}

void write_pencil(std::ostream& os, const ToeplitzPencil& p) {
  os << "# ktr pencil\n";
  os << "method " << method_tag(p.method) << '\n';
  os << "m " << p.size() << '\n';
  os << "dt " << format_double(p.grid.dt) << '\n';
  os << "c " << p.c << '\n';
  os << "j,a_re,a_im,b_re,b_im\n";
  for (int j = 0; j < p.size(); ++j) {
    const auto& a = p.row_a[static_cast<std::size_t>(j)];
    const auto& b = p.row_b[static_cast<std::size_t>(j)];
    os << j << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << ',' << format_double(b.real())
       << ',' << format_double(b.imag()) << '\n';
  }
}

ToeplitzPencil read_pencil(std::istream& is) {
  std::string line;
  auto next = [&]() -> std::string {
    while (std::getline(is, line)) {
      if (!line.empty() && line[0] != '#') return line;
    }
    throw ConfigError("truncated pencil dump");
  };
  auto field = [&](const std::string& key) {
    std::istringstream in(next());
    std::string k, v;
    in >> k >> v;
    if (k != key) throw ConfigError("expected '" + key + "' in pencil dump, found '" + k + "'");
    return v;
  };
  ToeplitzPencil p;
  p.method = parse_method_tag(field("method"));
  const int m = std::stoi(field("m"));
  p.grid = TimeGrid{std::stod(field("dt")), m};
  p.c = std::stoi(field("c"));
  if (next() != "j,a_re,a_im,b_re,b_im") throw ConfigError("bad pencil column header");
  for (int j = 0; j < m; ++j) {
    std::istringstream in(next());
    std::string tok;
    double v[5];
    for (double& x : v) {
      if (!std::getline(in, tok, ',')) throw ConfigError("short pencil row");
      x = std::stod(tok);
    }
    if (static_cast<int>(v[0]) != j) throw ConfigError("pencil rows out of order");
    p.row_a.emplace_back(v[1], v[2]);
    p.row_b.emplace_back(v[3], v[4]);
  }
  return p;
}

}  // namespace ktr
