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

#include "ktr/initial_states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ktr/errors.hpp"
#include "ktr/kernels.hpp"

namespace ktr {
namespace {

// (|phi> + sign T_b|phi>) / 2 for every block, unnormalized.
std::vector<cplx> apply_projector(const StateVector& phi, const ProjectorSpec& spec) {
  spec.validate();
  if (phi.num_qubits() != spec.n) throw DimensionMismatch("projector and state sizes differ");
  const auto& k = kernels::active();
  const int n = spec.n;
  std::vector<cplx> psi(phi.amplitudes().begin(), phi.amplitudes().end()), tmp(psi.size());
  const cplx kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  int offset = 0;
  for (std::size_t b = 0; b < spec.t_blocks.size(); ++b) {
    const PauliString tb = spec.t_blocks[b].embedded(n, offset);
    offset += spec.t_blocks[b].num_qubits();
    const double sign = spec.alpha[b] ? -1.0 : 1.0;
    k.apply_pauli(psi.data(), tmp.data(), psi.size(), index_mask(tb.x(), n), index_mask(tb.z(), n),
                  kPhases[tb.phase_exp()]);
    k.axpby(cplx{0.5 * sign, 0.0}, tmp.data(), cplx{0.5, 0.0}, psi.data(), psi.size());
  }
  return psi;
}

}  // namespace

int ProjectorSpec::parity() const {
  int ones = 0;
  for (auto a : alpha) ones += a ? 1 : 0;
  return (ones & 1) ? -1 : 1;
}

PauliString ProjectorSpec::full_t() const {
  validate();
  PauliString t = t_blocks.front();
  for (std::size_t b = 1; b < t_blocks.size(); ++b) t = tensor(t, t_blocks[b]);
  return t;
}

void ProjectorSpec::validate() const {
  if (t_blocks.empty()) throw ConfigError("projector needs at least one block");
  if (alpha.size() != t_blocks.size()) throw DimensionMismatch("alpha length differs from block count");
  int total = 0;
  for (const auto& tb : t_blocks) {
    if (!tb.is_hermitian() || tb.is_identity()) {
      throw NotTimeReversal("block " + tb.label() + " is not a nontrivial Hermitian involution");
    }
    total += tb.num_qubits();
  }
  if (total != n) throw DimensionMismatch("block sizes sum to " + std::to_string(total) + ", expected " + std::to_string(n));
}

PreparedState project(const StateVector& phi, const ProjectorSpec& spec) {
  std::vector<cplx> psi = apply_projector(phi, spec);
  const double prob = kernels::active().norm_sq(psi.data(), psi.size());
  if (prob < kProjectionFloor) {
    throw DegenerateProjection("projection probability " + std::to_string(prob) + " below threshold");
  }
  return PreparedState{StateVector::normalized(spec.n, std::move(psi)), spec.parity(), 1.0 / std::sqrt(prob)};
}

double projection_probability(const StateVector& phi, const ProjectorSpec& spec) {
  const std::vector<cplx> psi = apply_projector(phi, spec);
  return kernels::active().norm_sq(psi.data(), psi.size());
}

std::vector<ProjectorSpec> enumerate_local_projectors(std::span<const PauliString> t_blocks) {
  const std::size_t s = t_blocks.size();
  if (s == 0) throw ConfigError("need at least one block");
  if (s > 20) throw ResourceLimit("too many projector blocks");
  int n = 0;
  for (const auto& tb : t_blocks) n += tb.num_qubits();
  std::vector<ProjectorSpec> out;
  for (std::size_t i = 0; i < (std::size_t{1} << s); ++i) {
    ProjectorSpec spec{{t_blocks.begin(), t_blocks.end()}, BitVector(s), n};
    for (std::size_t b = 0; b < s; ++b) spec.alpha[b] = (i >> (s - 1 - b)) & 1;
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<PauliString> split_blocks(const PauliString& t, int s) {
  const int n = t.num_qubits();
  if (s < 1 || n % s != 0) {
    throw ConfigError("cannot split " + std::to_string(n) + " qubits into " + std::to_string(s) + " equal blocks");
  }
  const int r = n / s;
  const std::uint64_t mask = r >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
  std::vector<PauliString> out;
  for (int b = 0; b < s; ++b) {
    out.push_back(PauliString(r, (t.x() >> (b * r)) & mask, (t.z() >> (b * r)) & mask).literal());
  }
  return out;
}

ProjectorSpec global_projector(const PauliString& t, int alpha) {
  return ProjectorSpec{{t.literal()}, BitVector{static_cast<std::uint8_t>(alpha ? 1 : 0)}, t.num_qubits()};
}

StateVector build_block_state_w0(int r) {
  if (r < 4 || r % 4 != 0) throw ConfigError("w0 block size must be a positive multiple of 4, got " + std::to_string(r));
  const std::size_t dim = std::size_t{1} << r;
  const double a = std::pow(2.0, -0.5 * r);
  const double lead = (r / 4) % 2 ? -1.0 : 1.0;
  std::vector<cplx> amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    // |-+-+...>: the amplitude picks up -1 for every 1 on an even qubit, i.e. index bit r-1-q with q even.
    int minus = 0;
    for (int q = 0; q < r; q += 2) minus += (i >> (r - 1 - q)) & 1;
    amps[i] = lead * a + ((minus & 1) ? -a : a);
  }
  return StateVector::normalized(r, std::move(amps));
}

StateVector w0_blocks(int n, int s) {
  if (s < 1 || n % s != 0) throw ConfigError("w0 blocks do not tile " + std::to_string(n) + " qubits");
  const StateVector block = build_block_state_w0(n / s);
  StateVector out = block;
  for (int b = 1; b < s; ++b) out = tensor(out, block);
  return out;
}

StateVector w0_circuit_r4() {
  StateVector s = StateVector::basis(4, 0b1000);
  s = hadamard(s, 0);
  s = hadamard(s, 1);
  s = hadamard(s, 3);
  s = cnot(s, 0, 2);
  s = hadamard(s, 0);
  s = hadamard(s, 2);
  return s;
}

PreparedState build_lgt_initial(int n, int s) {
  std::string label(static_cast<std::size_t>(n), 'Y');
  const auto blocks = split_blocks(PauliString::from_label(label), s);
  return project(StateVector::plus(n), ProjectorSpec{blocks, BitVector(blocks.size(), 0), n});
}

int stabilizer_sign(const StateVector& s, const PauliString& t, double tol) {
  const StateVector ts = apply_pauli(s, t);
  const cplx ov = inner(s, ts);
  const int c = ov.real() >= 0.0 ? 1 : -1;
  double dev = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) dev = std::max(dev, std::abs(ts[i] - static_cast<double>(c) * s[i]));
  if (dev > tol) {
    throw NotTimeReversal("initial state is not stabilized by T = " + t.label() + " (deviation " +
                          std::to_string(dev) + ")");
  }
  return c;
}

}  // namespace ktr
