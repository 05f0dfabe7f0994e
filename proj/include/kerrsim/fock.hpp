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

#ifndef KERRSIM_FOCK_HPP
#define KERRSIM_FOCK_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace kerrsim {

using cplx = std::complex<double>;
using SparseCd = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Tensor product of truncated bosonic Fock spaces.  mode_dims[m] is the
/// per-mode truncation (levels 0..mode_dims[m]-1).  Mode 0 varies slowest in
/// the composite index, matching the Kronecker product order of tensor().
struct SpaceDescriptor {
  std::vector<int> mode_dims;

  SpaceDescriptor() = default;
  explicit SpaceDescriptor(std::vector<int> dims);

  int modes() const { return static_cast<int>(mode_dims.size()); }
  int total_dim() const;
  bool operator==(const SpaceDescriptor& o) const {
    return mode_dims == o.mode_dims;
  }
  bool operator!=(const SpaceDescriptor& o) const { return !(*this == o); }
  std::string to_string() const;
};

/// A (sparse) linear operator on a SpaceDescriptor.  Canonical form holds no
/// explicit zeros; matrices are kept compressed row-major.
class Operator {
 public:
  Operator() = default;
  Operator(SpaceDescriptor space, SparseCd mat);

  /// Zero operator on the given space.
  static Operator zero(const SpaceDescriptor& space);
  /// Identity operator on the given space.
  static Operator identity(const SpaceDescriptor& space);
  /// Build from a dense matrix, dropping exact zeros.
  static Operator from_dense(const SpaceDescriptor& space,
                             const Eigen::MatrixXcd& m);

  const SpaceDescriptor& space() const { return space_; }
  const SparseCd& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  std::int64_t nnz() const { return mat_.nonZeros(); }

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

  Operator dagger() const;
  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator& operator+=(const Operator& o);
  friend Operator operator*(cplx s, const Operator& a);

  bool is_zero() const { return mat_.nonZeros() == 0; }
  /// If this operator equals c*I within tol*max(1,norm), return (true, c).
  std::pair<bool, cplx> identity_multiple(double tol = 1e-12) const;

  double frobenius_norm() const;
  /// Frobenius norm of (this - o); upper bound for the spectral norm.
  double frobenius_distance(const Operator& o) const;
  /// Largest-magnitude entry of (this - o).
  double max_abs_distance(const Operator& o) const;
  /// max |this - this^dagger| entrywise.
  double hermiticity_defect() const;

  cplx trace() const;

 private:
  SpaceDescriptor space_;
  SparseCd mat_;
};

/// Annihilation operator of one mode, embedded in the full space.
/// On a single dim-N mode: a|n> = sqrt(n)|n-1>, truncated at N-1.
Operator annihilation(const SpaceDescriptor& space, int mode);

/// Number operator of one mode, embedded in the full space.
Operator number_op(const SpaceDescriptor& space, int mode);

/// Kerr-cavity internal Hamiltonian for one mode:
///   H0 = delta * n + chi * n * (n - 1)
/// (a detuned mode with a self-Kerr term), embedded in the full space.
Operator kerr_hamiltonian(const SpaceDescriptor& space, int mode, double delta,
                          double chi);

/// Embed a single-mode operator into the composite space at the given slot:
/// kron(I_before, op, I_after).
Operator embed(const Operator& single_mode, const SpaceDescriptor& space,
               int mode);

/// Kronecker product; the composite space concatenates the mode lists.
Operator tensor(const Operator& a, const Operator& b);

/// Eigendecomposition of a Hermitian operator.  Values ascend; columns of the
/// second member are the matching orthonormal eigenvectors.  Throws if the
/// Hermiticity defect exceeds herm_tol.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eig(
    const Operator& x, double herm_tol = 1e-8);
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eig(
    const Eigen::MatrixXcd& x, double herm_tol = 1e-8);

/// Pure state or density matrix on a SpaceDescriptor.
class QuantumState {
 public:
  enum class Kind { Pure, Density };

  static QuantumState pure(const SpaceDescriptor& space, Eigen::VectorXcd psi);
  static QuantumState density(const SpaceDescriptor& space,
                              Eigen::MatrixXcd rho);
  /// |vac> = |0,...,0>.
  static QuantumState vacuum(const SpaceDescriptor& space);

  Kind kind() const { return kind_; }
  const SpaceDescriptor& space() const { return space_; }
  const Eigen::VectorXcd& vector() const;
  const Eigen::MatrixXcd& matrix() const;

  /// Density-matrix view (|psi><psi| for pure states).
  Eigen::MatrixXcd as_density() const;

  /// <X> in this state.
  cplx expectation(const Operator& x) const;

  struct Validity {
    double trace_defect;        // |tr(rho) - 1| or |<psi|psi> - 1|
    double hermiticity_defect;  // max |rho - rho^dagger| (0 for pure)
    double min_eigenvalue;      // smallest eigenvalue (1 for pure)
    bool ok(double tol = 1e-10) const {
      return trace_defect <= tol && hermiticity_defect <= tol &&
             min_eigenvalue >= -tol;
    }
  };
  /// Trace / Hermiticity / positivity diagnostics of the stored state.
  Validity check() const;

 private:
  QuantumState(Kind k, SpaceDescriptor space);
  Kind kind_ = Kind::Pure;
  SpaceDescriptor space_;
  Eigen::VectorXcd vec_;
  Eigen::MatrixXcd mat_;
};

}  // namespace kerrsim

#endif  // KERRSIM_FOCK_HPP
