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

#include "ktr/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ktr/errors.hpp"
#include "ktr/kernels.hpp"

namespace ktr {
namespace {

const cplx kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

// Above this size the O(8^n) reconstruction check costs more than the factorization is worth.
constexpr int kReconstructionCheckQubits = 10;

void require_n(const PauliSum& h, const StateVector& s) {
  if (h.num_qubits() != s.num_qubits()) {
    throw DimensionMismatch("Hamiltonian on " + std::to_string(h.num_qubits()) + " qubits, state on " +
                            std::to_string(s.num_qubits()));
  }
}

}  // namespace

EvolutionPlan EvolutionPlan::exact(PauliSum h, int dense_cap) {
  EvolutionPlan plan(std::move(h), EvolutionMode::Exact);
  const Eigen::MatrixXcd m = dense_matrix(plan.h_, dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
  if (eig.info() != Eigen::Success) throw InternalInconsistency("Hamiltonian eigensolver did not converge");
  auto sp = std::make_shared<Spectral>();
  sp->values = eig.eigenvalues();
  sp->vectors = eig.eigenvectors();
  if (plan.h_.num_qubits() <= kReconstructionCheckQubits) {
    const Eigen::MatrixXcd rec = sp->vectors * sp->values.asDiagonal() * sp->vectors.adjoint();
    sp->reconstruction_error = (rec - m).norm();
    if (sp->reconstruction_error > 1e-10 * std::max(1.0, m.norm())) {
      throw InternalInconsistency("spectral factorization residual " + std::to_string(sp->reconstruction_error));
    }
  }
  plan.spectral_ = std::move(sp);
  return plan;
}

EvolutionPlan EvolutionPlan::trotter2(PauliSum h, double steps_per_unit) {
  if (!(steps_per_unit > 0.0) || !std::isfinite(steps_per_unit)) {
    throw ConfigError("Trotter steps per unit time must be positive");
  }
  EvolutionPlan plan(std::move(h), EvolutionMode::Trotter2);
  plan.steps_per_unit_ = steps_per_unit;
  return plan;
}

int EvolutionPlan::trotter_steps(double t) const {
  return static_cast<int>(std::ceil(std::abs(t) * steps_per_unit_));
}

const EvolutionPlan::Spectral& EvolutionPlan::spectral() const {
  if (!spectral_) throw ConfigError("spectral data requested from a Trotter plan");
  return *spectral_;
}

const Eigen::VectorXd& EvolutionPlan::eigenvalues() const { return spectral().values; }

const Eigen::MatrixXcd& EvolutionPlan::eigenvectors() const { return spectral().vectors; }

double EvolutionPlan::reconstruction_error() const { return spectral().reconstruction_error; }

StateVector EvolutionPlan::evolve(double t, const StateVector& s) const {
  require_n(h_, s);
  if (t == 0.0) return s;
  return mode_ == EvolutionMode::Exact ? evolve_exact(t, s) : evolve_trotter(t, s);
}

StateVector EvolutionPlan::evolve_exact(double t, const StateVector& s) const {
  const Spectral& sp = spectral();
  const Eigen::Map<const Eigen::VectorXcd> in(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
  Eigen::VectorXcd c = sp.vectors.adjoint() * in;
  std::vector<cplx> phases(s.dim());
  for (std::size_t k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, -t * sp.values[static_cast<Eigen::Index>(k)]);
  kernels::active().multiply(phases.data(), c.data(), phases.size());
  std::vector<cplx> out(s.dim());
  Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size())).noalias() = sp.vectors * c;
  return StateVector::adopt(s.num_qubits(), std::move(out));
}

StateVector EvolutionPlan::evolve_trotter(double t, const StateVector& s) const {
  const int n = s.num_qubits();
  const int steps = trotter_steps(t);
  const double dt = t / steps;
  const auto& k = kernels::active();
  const auto terms = h_.terms();

  std::vector<cplx> psi(s.amplitudes().begin(), s.amplitudes().end()), scratch(s.dim());
  auto rotate = [&](const PauliTerm& term) {
    // exp(-i theta P) = cos(theta) I - i sin(theta) P for involutory P.
    const double theta = 0.5 * dt * term.coeff;
    k.apply_pauli(psi.data(), scratch.data(), psi.size(), index_mask(term.op.x(), n), index_mask(term.op.z(), n),
                  kPhases[term.op.phase_exp()]);
    k.axpby(cplx{0.0, -std::sin(theta)}, scratch.data(), cplx{std::cos(theta), 0.0}, psi.data(), psi.size());
  };
  for (int step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < terms.size(); ++i) rotate(terms[i]);
    for (std::size_t i = terms.size(); i-- > 0;) rotate(terms[i]);
  }
  return StateVector::adopt(n, std::move(psi));
}

}  // namespace ktr
