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

#include "kerrsim/jade.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace kerrsim {

namespace {

using cd = std::complex<double>;

double total_off(const std::vector<Eigen::MatrixXcd>& ms) {
  double sum = 0.0;
  for (const auto& m : ms) sum += off_diagonal_energy(m);
  return sum;
}

}  // namespace

double off_diagonal_energy(const Eigen::MatrixXcd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return sum;
}

JadeResult jade(const std::vector<Eigen::MatrixXcd>& matrices,
                const JadeOptions& opt) {
  if (matrices.size() < 2) {
    throw std::invalid_argument("jade: need at least two matrices");
  }
  const Eigen::Index n = matrices.front().rows();
  double scale = 0.0;
  for (const auto& m : matrices) {
    if (m.rows() != n || m.cols() != n) {
      throw std::invalid_argument("jade: matrices must share one square side");
    }
    scale = std::max(scale, m.cwiseAbs().maxCoeff());
  }
  for (const auto& m : matrices) {
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > opt.herm_tol * std::max(scale, 1.0)) {
      throw std::invalid_argument("jade: input is not Hermitian");
    }
  }

  std::vector<Eigen::MatrixXcd> work(matrices);
  const std::size_t nm = work.size();

  // A rotation can lower the off-diagonal energy by at most tr(G)/2, so a
  // pair whose 3x3 subproblem carries only rounding-level weight is noise:
  // its dominant eigenvector is arbitrary and applying the rotation cycles
  // forever without progress (this happens in the numerically dead tail of
  // density matrices).  Skipping such pairs leaves at most
  // pairs * floor / 2 of off-diagonal energy unharvested, far below every
  // tolerance used downstream.
  double sq_norm = 0.0;
  for (const auto& m : work) sq_norm += m.squaredNorm();
  const double gain_floor = 1e-22 * sq_norm;

  JadeResult result;
  result.t = Eigen::MatrixXcd::Identity(n, n);
  result.off_history.push_back(total_off(work));

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
        for (std::size_t k = 0; k < nm; ++k) {
          const auto& a = work[k];
          const Eigen::Vector3d h(std::real(a(p, p) - a(q, q)),
                                  2.0 * std::real(a(p, q)),
                                  2.0 * std::imag(a(p, q)));
          g.noalias() += h * h.transpose();
        }
        if (g.trace() <= gain_floor) continue;

        es.compute(g);
        Eigen::Vector3d v = es.eigenvectors().col(2);
        if (v[0] < 0.0) v = -v;

        const double c = std::sqrt(0.5 * (1.0 + v[0]));
        const cd s = cd(v[1], -v[2]) / (2.0 * c);
        if (std::abs(s) <= opt.tol) continue;

        rotated = true;
        const cd sc = std::conj(s);
        for (std::size_t k = 0; k < nm; ++k) {
          auto& a = work[k];
          // Rows p,q of R^* A, then columns p,q of (.) R.
          const Eigen::RowVectorXcd rp = c * a.row(p) + sc * a.row(q);
          a.row(q) = -s * a.row(p) + c * a.row(q);
          a.row(p) = rp;
          const Eigen::VectorXcd cp = c * a.col(p) + s * a.col(q);
          a.col(q) = -sc * a.col(p) + c * a.col(q);
          a.col(p) = cp;
        }
        const Eigen::VectorXcd tp = c * result.t.col(p) + s * result.t.col(q);
        result.t.col(q) = -sc * result.t.col(p) + c * result.t.col(q);
        result.t.col(p) = tp;
      }
    }
    ++result.sweeps;
    result.off_history.push_back(total_off(work));
    if (!rotated) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace kerrsim
