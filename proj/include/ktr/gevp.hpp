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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ktr/krylov.hpp"
#include "ktr/pauli.hpp"

namespace ktr {

inline constexpr double kDefaultEpsilon = 1e-8;

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  int kept_dim = 0;
  double threshold = 0.0;
  std::vector<double> b_eigenvalues;  // ascending, diagnostics

  double ground() const { return eigenvalues.front(); }
};

/// A x = lambda B x restricted to B's eigenvectors with eigenvalue >= epsilon * max and > 0.
SpectrumResult solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double epsilon = kDefaultEpsilon);
SpectrumResult solve(const ToeplitzPencil& pencil, double epsilon = kDefaultEpsilon);

/// Full ascending spectrum of dense(h).
std::vector<double> exact_reference(const PauliSum& h, int dense_cap = kDefaultDenseCap);

/// Lowest eigenvalue of h on the joint +1 eigenspace of the generators.
double sector_ground_energy(const PauliSum& h, std::span<const PauliSum> generators,
                            int dense_cap = kDefaultDenseCap);

}  // namespace ktr
