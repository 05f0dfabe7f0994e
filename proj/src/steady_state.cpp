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

#include "kerrsim/steady_state.hpp"

#include <Eigen/SparseLU>
#include <stdexcept>
#include <vector>

#include "kerrsim/liouvillian.hpp"

namespace kerrsim {

SteadyStateResult steady_state(const LindbladForm& form, double residual_tol) {
  const int d = form.H.dim();
  const int dd = d * d;
  const SparseCd gen = liouvillian_matrix(form.H, form.collapse);

  // Singular system M vec(rho) = 0 made solvable by replacing the first
  // row with the trace functional and asking for trace one.
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(gen.nonZeros()) + d);
  for (int k = 0; k < gen.outerSize(); ++k)
    for (SparseCd::InnerIterator it(gen, k); it; ++it)
      if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < d; ++i)
    trips.emplace_back(0, i * d + i, cplx(1.0, 0.0));
  SparseCd sys(dd, dd);
  sys.setFromTriplets(trips.begin(), trips.end());
  sys.makeCompressed();

  // Natural ordering: these generators are banded, and the residual test
  // below is the backstop for any factorization trouble.  (The
  // fill-reducing orderings shipped with Eigen 3.4.0 mis-factorize this
  // pattern: COLAMD either reports a spurious structural singularity or
  // silently returns a wrong solution.)
  Eigen::SparseLU<SparseCd, Eigen::NaturalOrdering<int>> lu;
  lu.analyzePattern(sys);
  lu.factorize(sys);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("steady_state: sparse factorization failed");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dd);
  rhs[0] = 1.0;
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("steady_state: solve failed");

  Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::VectorXd vals = es.eigenvalues();
  const double scale = vals.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -1e-10 * std::max(scale, 1.0))
      throw std::runtime_error("steady_state: solution is not positive");
    if (vals[i] < 0.0) vals[i] = 0.0;
  }
  rho = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  rho /= rho.trace().real();

  const Eigen::VectorXcd vec_rho =
      Eigen::Map<const Eigen::VectorXcd>(rho.data(), dd);
  const double residual = (gen * vec_rho).norm();
  if (!(residual <= residual_tol))
    throw std::runtime_error("steady_state: residual above tolerance");

  return {QuantumState::density(form.H.space(), std::move(rho)), residual};
}

SteadyStateResult steady_state(const SlhTriple& network,
                               const std::map<std::string, cplx>& drives,
                               double residual_tol) {
  return steady_state(absorbed_lindblad(network, drives), residual_tol);
}

}  // namespace kerrsim
