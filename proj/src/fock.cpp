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

#include "kerrsim/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace kerrsim {

namespace {

void prune_zeros(SparseCd& m) {
  m.prune([](int, int, const cplx& v) { return v != cplx(0.0, 0.0); });
  m.makeCompressed();
}

void require_same_space(const Operator& a, const Operator& b,
                        const char* what) {
  if (a.space() != b.space()) {
    throw std::invalid_argument(std::string(what) + ": space mismatch " +
                                a.space().to_string() + " vs " +
                                b.space().to_string());
  }
}

}  // namespace

SpaceDescriptor::SpaceDescriptor(std::vector<int> dims)
    : mode_dims(std::move(dims)) {
  for (int d : mode_dims) {
    if (d < 1) throw std::invalid_argument("SpaceDescriptor: mode dim < 1");
  }
}

int SpaceDescriptor::total_dim() const {
  int n = 1;
  for (int d : mode_dims) n *= d;
  return n;
}

std::string SpaceDescriptor::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < mode_dims.size(); ++i) {
    if (i) os << ",";
    os << mode_dims[i];
  }
  os << "]";
  return os.str();
}

Operator::Operator(SpaceDescriptor space, SparseCd mat)
    : space_(std::move(space)), mat_(std::move(mat)) {
  const int n = space_.total_dim();
  if (mat_.rows() != n || mat_.cols() != n) {
    throw std::invalid_argument("Operator: matrix shape does not match space");
  }
  prune_zeros(mat_);
}

Operator Operator::zero(const SpaceDescriptor& space) {
  SparseCd m(space.total_dim(), space.total_dim());
  return Operator(space, std::move(m));
}

Operator Operator::identity(const SpaceDescriptor& space) {
  const int n = space.total_dim();
  SparseCd m(n, n);
  m.setIdentity();
  return Operator(space, std::move(m));
}

Operator Operator::from_dense(const SpaceDescriptor& space,
                              const Eigen::MatrixXcd& m) {
  return Operator(space, m.sparseView());
}

Operator Operator::dagger() const {
  SparseCd m = mat_.adjoint();
  return Operator(space_, std::move(m));
}

Operator Operator::operator+(const Operator& o) const {
  require_same_space(*this, o, "add");
  SparseCd m = mat_ + o.mat_;
  return Operator(space_, std::move(m));
}

Operator Operator::operator-(const Operator& o) const {
  require_same_space(*this, o, "sub");
  SparseCd m = mat_ - o.mat_;
  return Operator(space_, std::move(m));
}

Operator Operator::operator*(const Operator& o) const {
  require_same_space(*this, o, "matmul");
  SparseCd m = mat_ * o.mat_;
  return Operator(space_, std::move(m));
}

Operator& Operator::operator+=(const Operator& o) {
  *this = *this + o;
  return *this;
}

Operator operator*(cplx s, const Operator& a) {
  SparseCd m = s * a.mat_;
  return Operator(a.space_, std::move(m));
}

std::pair<bool, cplx> Operator::identity_multiple(double tol) const {
  const int n = dim();
  const cplx c = trace() / static_cast<double>(n);
  const double scale = std::max(1.0, std::abs(c) * std::sqrt(double(n)));
  double defect = 0.0;
  // off-diagonal entries must vanish and diagonal entries must equal c;
  // absent diagonal entries contribute |c| directly
  Eigen::VectorXd diag_seen = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < mat_.outerSize(); ++r) {
    for (SparseCd::InnerIterator it(mat_, r); it; ++it) {
      if (it.row() == it.col()) {
        defect = std::max(defect, std::abs(it.value() - c));
        diag_seen[it.row()] = 1.0;
      } else {
        defect = std::max(defect, std::abs(it.value()));
      }
    }
  }
  if (diag_seen.minCoeff() == 0.0) defect = std::max(defect, std::abs(c));
  return {defect <= tol * scale, c};
}

double Operator::frobenius_norm() const { return mat_.norm(); }

double Operator::frobenius_distance(const Operator& o) const {
  require_same_space(*this, o, "distance");
  return SparseCd(mat_ - o.mat_).norm();
}

double Operator::max_abs_distance(const Operator& o) const {
  require_same_space(*this, o, "distance");
  SparseCd d = mat_ - o.mat_;
  double m = 0.0;
  for (int r = 0; r < d.outerSize(); ++r) {
    for (SparseCd::InnerIterator it(d, r); it; ++it) {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

double Operator::hermiticity_defect() const {
  SparseCd d = SparseCd(mat_.adjoint()) - mat_;
  double m = 0.0;
  for (int r = 0; r < d.outerSize(); ++r) {
    for (SparseCd::InnerIterator it(d, r); it; ++it) {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

cplx Operator::trace() const {
  cplx t = 0.0;
  for (int r = 0; r < mat_.outerSize(); ++r) {
    for (SparseCd::InnerIterator it(mat_, r); it; ++it) {
      if (it.row() == it.col()) t += it.value();
    }
  }
  return t;
}

Operator annihilation(const SpaceDescriptor& space, int mode) {
  if (mode < 0 || mode >= space.modes()) {
    throw std::invalid_argument("annihilation: mode out of range");
  }
  const int n = space.mode_dims[mode];
  SparseCd a(n, n);
  a.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int k = 1; k < n; ++k) {
    a.insert(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  a.makeCompressed();
  Operator single(SpaceDescriptor({n}), std::move(a));
  return embed(single, space, mode);
}

Operator number_op(const SpaceDescriptor& space, int mode) {
  if (mode < 0 || mode >= space.modes()) {
    throw std::invalid_argument("number_op: mode out of range");
  }
  const int n = space.mode_dims[mode];
  SparseCd m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int k = 1; k < n; ++k) m.insert(k, k) = static_cast<double>(k);
  m.makeCompressed();
  Operator single(SpaceDescriptor({n}), std::move(m));
  return embed(single, space, mode);
}

Operator kerr_hamiltonian(const SpaceDescriptor& space, int mode, double delta,
                          double chi) {
  const int n = space.mode_dims.at(mode);
  SparseCd m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int k = 1; k < n; ++k) {
    m.insert(k, k) = delta * k + chi * k * (k - 1.0);
  }
  m.makeCompressed();
  Operator single(SpaceDescriptor({n}), std::move(m));
  return embed(single, space, mode);
}

Operator embed(const Operator& single_mode, const SpaceDescriptor& space,
               int mode) {
  if (mode < 0 || mode >= space.modes()) {
    throw std::invalid_argument("embed: mode out of range");
  }
  if (single_mode.space().modes() != 1 ||
      single_mode.space().mode_dims[0] != space.mode_dims[mode]) {
    throw std::invalid_argument("embed: operator dim does not match slot");
  }
  int pre = 1, post = 1;
  for (int m = 0; m < mode; ++m) pre *= space.mode_dims[m];
  for (int m = mode + 1; m < space.modes(); ++m) post *= space.mode_dims[m];
  SparseCd ipre(pre, pre), ipost(post, post);
  ipre.setIdentity();
  ipost.setIdentity();
  SparseCd tmp = Eigen::kroneckerProduct(ipre, single_mode.matrix());
  SparseCd full = Eigen::kroneckerProduct(tmp, ipost);
  return Operator(space, std::move(full));
}

Operator tensor(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.space().mode_dims;
  dims.insert(dims.end(), b.space().mode_dims.begin(),
              b.space().mode_dims.end());
  SparseCd m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return Operator(SpaceDescriptor(std::move(dims)), std::move(m));
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eig(
    const Eigen::MatrixXcd& x, double herm_tol) {
  const double defect = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tol) {
    throw std::invalid_argument("hermitian_eig: matrix not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eig(const Operator& x,
                                                           double herm_tol) {
  return hermitian_eig(x.dense(), herm_tol);
}

QuantumState::QuantumState(Kind k, SpaceDescriptor space)
    : kind_(k), space_(std::move(space)) {}

QuantumState QuantumState::pure(const SpaceDescriptor& space,
                                Eigen::VectorXcd psi) {
  if (psi.size() != space.total_dim()) {
    throw std::invalid_argument("QuantumState::pure: dim mismatch");
  }
  QuantumState s(Kind::Pure, space);
  s.vec_ = std::move(psi);
  return s;
}

QuantumState QuantumState::density(const SpaceDescriptor& space,
                                   Eigen::MatrixXcd rho) {
  if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
    throw std::invalid_argument("QuantumState::density: dim mismatch");
  }
  QuantumState s(Kind::Density, space);
  s.mat_ = std::move(rho);
  return s;
}

QuantumState QuantumState::vacuum(const SpaceDescriptor& space) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.total_dim());
  v[0] = 1.0;
  return pure(space, std::move(v));
}

const Eigen::VectorXcd& QuantumState::vector() const {
  if (kind_ != Kind::Pure) {
    throw std::logic_error("QuantumState: not a pure state");
  }
  return vec_;
}

const Eigen::MatrixXcd& QuantumState::matrix() const {
  if (kind_ != Kind::Density) {
    throw std::logic_error("QuantumState: not a density matrix");
  }
  return mat_;
}

Eigen::MatrixXcd QuantumState::as_density() const {
  if (kind_ == Kind::Density) return mat_;
  return vec_ * vec_.adjoint();
}

cplx QuantumState::expectation(const Operator& x) const {
  if (x.space() != space_) {
    throw std::invalid_argument("expectation: space mismatch");
  }
  if (kind_ == Kind::Pure) {
    return vec_.dot(x.matrix() * vec_);  // Eigen dot conjugates the left arg
  }
  return (x.matrix() * mat_).eval().diagonal().sum();
}

QuantumState::Validity QuantumState::check() const {
  Validity v{};
  if (kind_ == Kind::Pure) {
    v.trace_defect = std::abs(vec_.squaredNorm() - 1.0);
    v.hermiticity_defect = 0.0;
    v.min_eigenvalue = 1.0;
    return v;
  }
  v.trace_defect = std::abs(mat_.trace() - cplx(1.0));
  v.hermiticity_defect = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (mat_ + mat_.adjoint()));
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  return v;
}

}  // namespace kerrsim
