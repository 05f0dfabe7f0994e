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

#include "kerrsim/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kerrsim {

double ReductionBasis::unitarity_defect() const {
  const Eigen::Index n = t.rows();
  return (t.adjoint() * t - Eigen::MatrixXcd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

ReductionBasis build_basis(const Eigen::MatrixXcd& rho_drive,
                           const Eigen::MatrixXcd& rho_zero, int d,
                           double lambda, const JadeOptions& opt) {
  const Eigen::Index n = rho_drive.rows();
  if (rho_zero.rows() != n || rho_zero.cols() != n || rho_drive.cols() != n) {
    throw std::invalid_argument("build_basis: input sides differ");
  }
  if (d < 1 || d > n) {
    throw std::invalid_argument("build_basis: retained dimension out of range");
  }

  JadeResult r = jade({rho_drive, rho_zero}, opt);

  Eigen::MatrixXcd sigma = r.t.adjoint() * (rho_drive + rho_zero) * r.t;
  Eigen::VectorXd mags = sigma.diagonal().cwiseAbs();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mags[a] < mags[b]; });

  ReductionBasis basis;
  basis.t.resize(n, n);
  basis.diag_weights.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    basis.t.col(j) = r.t.col(order[j]);
    basis.diag_weights[j] = mags[order[j]];
  }
  basis.d = d;
  basis.lambda = lambda;
  basis.block = BasisBlock::LastColumns;
  return basis;
}

ReductionBasis fock_truncation_basis(int n, int d) {
  if (n < 1 || d < 1 || d > n) {
    throw std::invalid_argument(
        "fock_truncation_basis: retained dimension out of range");
  }
  ReductionBasis basis;
  basis.t = Eigen::MatrixXcd::Identity(n, n);
  basis.d = d;
  basis.lambda = 0.0;
  basis.diag_weights = Eigen::VectorXd::Ones(n);
  basis.block = BasisBlock::FirstColumns;
  return basis;
}

namespace {

// Columns of T spanning the retained subspace.
Eigen::MatrixXcd retained_columns(const ReductionBasis& basis) {
  return basis.block == BasisBlock::LastColumns
             ? basis.t.rightCols(basis.d)
             : basis.t.leftCols(basis.d);
}

}  // namespace

Eigen::MatrixXcd reduce_operator(const Eigen::MatrixXcd& x,
                                 const ReductionBasis& basis) {
  if (x.rows() != basis.full_dim() || x.cols() != basis.full_dim()) {
    throw std::invalid_argument("reduce_operator: side mismatch");
  }
  const Eigen::MatrixXcd kept = retained_columns(basis);
  return kept.adjoint() * x * kept;
}

Operator reduce_operator(const Operator& x, const ReductionBasis& basis) {
  if (x.space().total_dim() != basis.full_dim()) {
    throw std::invalid_argument("reduce_operator: side mismatch");
  }
  return Operator::from_dense(SpaceDescriptor({basis.d}),
                              reduce_operator(x.dense(), basis));
}

Eigen::MatrixXcd embed_state(const Eigen::MatrixXcd& rho_r,
                             const ReductionBasis& basis) {
  if (rho_r.rows() != basis.d || rho_r.cols() != basis.d) {
    throw std::invalid_argument("embed_state: side mismatch");
  }
  const Eigen::MatrixXcd kept = retained_columns(basis);
  return kept * rho_r * kept.adjoint();
}

CavityOps reduced_cavity_ops(const ReductionBasis& basis,
                             const SpaceDescriptor& space, int mode,
                             double delta, double chi) {
  if (mode < 0 || mode >= space.modes()) {
    throw std::invalid_argument("reduced_cavity_ops: mode out of range");
  }
  if (space.mode_dims[mode] != basis.d) {
    throw std::invalid_argument(
        "reduced_cavity_ops: mode dimension differs from the basis");
  }
  SpaceDescriptor native({basis.full_dim()});
  SpaceDescriptor single({basis.d});
  Operator a_r = Operator::from_dense(
      single, reduce_operator(annihilation(native, 0).dense(), basis));
  Operator h_r = Operator::from_dense(
      single,
      reduce_operator(kerr_hamiltonian(native, 0, delta, chi).dense(), basis));
  return {embed(a_r, space, mode), embed(h_r, space, mode)};
}

QuantumState reduced_vacuum(const ReductionBasis& basis) {
  const Eigen::MatrixXcd kept = retained_columns(basis);
  Eigen::VectorXcd coords = kept.row(0).adjoint();
  const double norm = coords.norm();
  if (norm < 1e-8) {
    throw std::runtime_error(
        "reduced_vacuum: retained subspace is nearly orthogonal to the vacuum");
  }
  return QuantumState::pure(SpaceDescriptor({basis.d}), coords / norm);
}

void save_basis(const ReductionBasis& basis, const std::string& path) {
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("save_basis: cannot open " + path);
  }
  const int n = basis.full_dim();
  os << "kerrsim-basis v1\n";
  os << "side " << n << "\n";
  os << "retained " << basis.d << "\n";
  os << std::setprecision(17);
  os << "drive " << basis.lambda << "\n";
  os << "block "
     << (basis.block == BasisBlock::LastColumns ? "last" : "first") << "\n";
  os << "manifest-hash " << std::hex << std::setw(16) << std::setfill('0')
     << basis.manifest_hash << std::dec << std::setfill(' ') << "\n";
  os << "weights\n";
  for (int i = 0; i < n; ++i) {
    os << basis.diag_weights[i] << (i + 1 < n ? ' ' : '\n');
  }
  os << "t\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      os << basis.t(i, j).real() << ' ' << basis.t(i, j).imag()
         << (j + 1 < n ? ' ' : '\n');
    }
  }
  if (!os) {
    throw std::runtime_error("save_basis: write failed for " + path);
  }
}

ReductionBasis load_basis(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("load_basis: cannot open " + path);
  }
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("load_basis: " + what + " in " + path);
  };

  std::string line;
  if (!std::getline(is, line) || line != "kerrsim-basis v1") {
    fail("bad header");
  }
  ReductionBasis basis;
  int n = 0;
  std::string key, word;

  is >> key >> n;
  if (key != "side" || n < 1) fail("bad side");
  is >> key >> basis.d;
  if (key != "retained" || basis.d < 1 || basis.d > n) fail("bad retained");
  is >> key >> basis.lambda;
  if (key != "drive") fail("bad drive");
  is >> key >> word;
  if (key != "block" || (word != "last" && word != "first")) fail("bad block");
  basis.block =
      word == "last" ? BasisBlock::LastColumns : BasisBlock::FirstColumns;
  is >> key >> std::hex >> basis.manifest_hash >> std::dec;
  if (key != "manifest-hash") fail("bad manifest hash");

  is >> key;
  if (key != "weights") fail("missing weights");
  basis.diag_weights.resize(n);
  for (int i = 0; i < n; ++i) is >> basis.diag_weights[i];

  is >> key;
  if (key != "t") fail("missing unitary");
  basis.t.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      is >> re >> im;
      basis.t(i, j) = cplx(re, im);
    }
  }
  if (!is) fail("truncated file");
  return basis;
}

}  // namespace kerrsim
