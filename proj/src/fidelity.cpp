// Copyright 2026 The kerrsim Authors
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

#include "kerrsim/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace kerrsim {

namespace {

double clamped_sqrt(double x, double scale) {
  if (x < -1e-10 * scale)
    throw std::invalid_argument("state_fidelity: matrix is not positive");
  return x > 0.0 ? std::sqrt(x) : 0.0;
}

}  // namespace

double state_fidelity(const Eigen::MatrixXcd& rho,
                      const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() ||
      rho.rows() != rho.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (rho + rho.adjoint()));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd roots = es.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    roots[i] = clamped_sqrt(roots[i], scale);
  const Eigen::MatrixXcd sqrt_rho = es.eigenvectors() * roots.asDiagonal() *
                                    es.eigenvectors().adjoint();

  const Eigen::MatrixXcd inner = sqrt_rho * sigma * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(
      0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double scale2 =
      std::max(1.0, es2.eigenvalues().cwiseAbs().maxCoeff());
  double f = 0.0;
  for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i)
    f += clamped_sqrt(es2.eigenvalues()[i], scale2);
  return f;
}

double state_fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.space() != b.space())
    throw std::invalid_argument("state_fidelity: space mismatch");
  if (a.kind() == QuantumState::Kind::Pure &&
      b.kind() == QuantumState::Kind::Pure)
    return std::abs(a.vector().dot(b.vector()));
  return state_fidelity(a.as_density(), b.as_density());
}

double trace_distance(const Eigen::MatrixXcd& rho,
                      const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::MatrixXcd diff = rho - sigma;
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
  if (a.space() != b.space())
    throw std::invalid_argument("trace_distance: space mismatch");
  return trace_distance(a.as_density(), b.as_density());
}

}  // namespace kerrsim
