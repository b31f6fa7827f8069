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

#include <memory>

#include <Eigen/Dense>

#include "ktr/pauli.hpp"
#include "ktr/state.hpp"

namespace ktr {

enum class EvolutionMode { Exact, Trotter2 };

/// How exp(-itH) is applied. Copies share one read-only spectral cache, so
/// concurrent evolve() calls on distinct states are safe.
class EvolutionPlan {
 public:
  /// Diagonalizes dense(h) once; throws ResourceLimit above dense_cap qubits.
  static EvolutionPlan exact(PauliSum h, int dense_cap = kDefaultDenseCap);
  /// Symmetric second-order splitting with ceil(|t| * steps_per_unit) steps.
  static EvolutionPlan trotter2(PauliSum h, double steps_per_unit);

  EvolutionMode mode() const noexcept { return mode_; }
  const PauliSum& hamiltonian() const noexcept { return h_; }
  double steps_per_unit() const noexcept { return steps_per_unit_; }
  int trotter_steps(double t) const;

  StateVector evolve(double t, const StateVector& s) const;

  // Exact mode only.
  const Eigen::VectorXd& eigenvalues() const;
  const Eigen::MatrixXcd& eigenvectors() const;
  double reconstruction_error() const;

 private:
  struct Spectral {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
    double reconstruction_error = 0.0;
  };

  EvolutionPlan(PauliSum h, EvolutionMode mode) : h_(std::move(h)), mode_(mode) {}
  const Spectral& spectral() const;
  StateVector evolve_exact(double t, const StateVector& s) const;
  StateVector evolve_trotter(double t, const StateVector& s) const;

  PauliSum h_;
  EvolutionMode mode_;
  double steps_per_unit_ = 0.0;
  std::shared_ptr<const Spectral> spectral_;
};

inline StateVector evolve(const EvolutionPlan& plan, double t, const StateVector& s) { return plan.evolve(t, s); }

}  // namespace ktr
