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

#ifndef KERRSIM_JADE_HPP
#define KERRSIM_JADE_HPP

#include <Eigen/Dense>
#include <vector>

namespace kerrsim {

// Joint approximate diagonalization of a set of Hermitian matrices by complex
// Jacobi sweeps (the JADE algorithm of Cardoso and Souloumiac).  Each plane
// rotation R over an index pair (p, q) is the closed-form minimizer of the
// summed off-diagonal energy of that pair across all inputs: the 3x3 real
// symmetric matrix G = sum_k h_k h_k^T with
//
//   h_k = (A_k(p,p) - A_k(q,q), 2 Re A_k(p,q), 2 Im A_k(p,q))
//
// has dominant unit eigenvector (x, y, z), sign-fixed so x >= 0, giving
// c = sqrt((1 + x) / 2), s = (y - i z) / (2 c) and R = [[c, -conj(s)], [s, c]].
// All inputs update as A <- R^* A R and the accumulated unitary as T <- T R.

struct JadeOptions {
  double tol = 1e-9;       // rotations with |s| <= tol are skipped
  int max_sweeps = 200;
  double herm_tol = 1e-8;  // admissible Hermiticity defect of the inputs
};

struct JadeResult {
  Eigen::MatrixXcd t;  // accumulated unitary; T^* A_k T is nearly diagonal
  // Total off-diagonal energy across inputs: entry 0 before any sweep, then
  // one entry after each completed sweep.  Non-increasing.
  std::vector<double> off_history;
  int sweeps = 0;
  // False when max_sweeps elapsed with some rotation still above tol; t is
  // then the best unitary found so far.
  bool converged = false;
};

/// Sum of squared magnitudes of the off-diagonal entries.
double off_diagonal_energy(const Eigen::MatrixXcd& a);

/// Jointly diagonalize two or more Hermitian matrices of a common side.
/// Throws std::invalid_argument on fewer than two inputs, mismatched sides or
/// a Hermiticity defect beyond opt.herm_tol (scaled by the largest entry).
JadeResult jade(const std::vector<Eigen::MatrixXcd>& matrices,
                const JadeOptions& opt = {});

}  // namespace kerrsim

#endif  // KERRSIM_JADE_HPP
