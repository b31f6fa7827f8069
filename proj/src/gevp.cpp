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

#include "ktr/gevp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ktr/errors.hpp"

namespace ktr {
namespace {

void require_hermitian(const Eigen::MatrixXcd& m, const char* name) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * scale) {
    throw InternalInconsistency(std::string(name) + " is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
}

}  // namespace

SpectrumResult solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double epsilon) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() == 0) {
    throw DimensionMismatch("pencil matrices must be square and of equal size");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("threshold epsilon must be non-negative");
  require_hermitian(a, "A");
  require_hermitian(b, "B");
  const Eigen::MatrixXcd ah = 0.5 * (a + a.adjoint()), bh = 0.5 * (b + b.adjoint());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(bh);
  if (eb.info() != Eigen::Success) throw DegeneratePencil("eigendecomposition of B failed");
  const Eigen::VectorXd& lb = eb.eigenvalues();
  SpectrumResult out;
  out.threshold = epsilon;
  out.b_eigenvalues.assign(lb.data(), lb.data() + lb.size());
  const double lmax = lb.maxCoeff();
  if (!(lmax > 0.0)) throw DegeneratePencil("B has no positive eigenvalue");

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lb.size(); ++i) {
    if (lb[i] > 0.0 && lb[i] >= epsilon * lmax) keep.push_back(i);
  }
  if (keep.empty()) throw DegeneratePencil("no eigenvalue of B survives the threshold");

  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd w(ah.rows(), k);
  for (Eigen::Index c = 0; c < k; ++c) w.col(c) = eb.eigenvectors().col(keep[c]) / std::sqrt(lb[keep[c]]);
  Eigen::MatrixXcd reduced = w.adjoint() * ah * w;
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(reduced, Eigen::EigenvaluesOnly);
  if (er.info() != Eigen::Success) throw DegeneratePencil("reduced eigenproblem failed");
  out.eigenvalues.assign(er.eigenvalues().data(), er.eigenvalues().data() + k);
  out.kept_dim = static_cast<int>(k);
  return out;
}

SpectrumResult solve(const ToeplitzPencil& pencil, double epsilon) { return solve(pencil.a(), pencil.b(), epsilon); }

std::vector<double> exact_reference(const PauliSum& h, int dense_cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense_matrix(h, dense_cap), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw InternalInconsistency("Hamiltonian eigensolver did not converge");
  return {eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size()};
}

double sector_ground_energy(const PauliSum& h, std::span<const PauliSum> generators, int dense_cap) {
  const Eigen::MatrixXcd hm = dense_matrix(h, dense_cap);
  const Eigen::Index dim = hm.rows();
  // Columns spanning the joint +1 eigenspace, refined one generator at a time.
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : generators) {
    if (g.num_qubits() != h.num_qubits()) throw DimensionMismatch("generator acts on a different register");
    const Eigen::MatrixXcd gm = dense_matrix(g, dense_cap);
    if ((gm * hm - hm * gm).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, h.one_norm())) {
      throw ModelConsistency("sector generator does not commute with H");
    }
    const Eigen::MatrixXcd restricted = basis.adjoint() * gm * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eg(0.5 * (restricted + restricted.adjoint()));
    std::vector<Eigen::Index> plus;
    for (Eigen::Index i = 0; i < eg.eigenvalues().size(); ++i) {
      if (std::abs(eg.eigenvalues()[i] - 1.0) < 1e-8) plus.push_back(i);
    }
    if (plus.empty()) throw ModelConsistency("sector is empty");
    Eigen::MatrixXcd next(dim, static_cast<Eigen::Index>(plus.size()));
    for (std::size_t c = 0; c < plus.size(); ++c) {
      next.col(static_cast<Eigen::Index>(c)) = basis * eg.eigenvectors().col(plus[c]);
    }
    basis = std::move(next);
  }
  const Eigen::MatrixXcd hs = basis.adjoint() * hm * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (hs + hs.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace ktr
