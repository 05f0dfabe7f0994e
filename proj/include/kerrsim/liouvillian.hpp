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

#ifndef KERRSIM_LIOUVILLIAN_HPP_
#define KERRSIM_LIOUVILLIAN_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kerrsim/fock.hpp"
#include "kerrsim/kernels/kernels.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

// Right-hand side of the master equation in matrix form:
//   -i[H, rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho})
Eigen::MatrixXcd lindblad_apply(const Eigen::MatrixXcd& rho, const Operator& H,
                                const std::vector<Operator>& Ls);

// The same generator as a sparse matrix acting on column-stacked rho,
// vec(A rho B) = (B^T kron A) vec(rho):
//   M = -i(I kron H - H^T kron I)
//     + sum_j [ conj(L) kron L - 1/2 I kron (L^dag L) - 1/2 (L^dag L)^T kron I ]
SparseCd liouvillian_matrix(const Operator& H,
                              const std::vector<Operator>& Ls);

// CSR mirror of an Eigen row-major sparse matrix, laid out for the runtime
// dispatched kernels.
struct CsrMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col_idx;
  std::vector<cplx> values;

  static CsrMatrix from(const SparseCd& m);
  // y = A x
  void apply(const cplx* x, cplx* y) const;
  // y += s * (A x), using `scratch` (resized as needed)
  void apply_add(cplx s, const cplx* x, cplx* y,
                 std::vector<cplx>& scratch) const;
  double one_norm() const;
};

// A drive-affine family of sparse generators
//   A(u) = A0 + sum_p [ Re(u_p) R_p + Im(u_p) I_p ],
// recovered exactly from probe evaluations at u = 0, e_p, i e_p (the
// generator is affine in the real and imaginary drive parts because the
// |offset|^2 contributions cancel inside the dissipator).
class AffineGeneratorFamily {
 public:
  using BuildFn = std::function<SparseCd(const std::map<std::string, cplx>&)>;

  AffineGeneratorFamily(const BuildFn& build,
                        std::vector<std::string> param_names);

  std::int64_t dim() const { return base_.rows; }
  const std::vector<std::string>& parameter_names() const { return names_; }

  // y = A(u) x; scratch workspace supplied by the caller for thread safety
  void apply(const std::map<std::string, cplx>& drives, const cplx* x, cplx* y,
             std::vector<cplx>& scratch) const;
  void apply(const std::map<std::string, cplx>& drives,
             const Eigen::VectorXcd& x, Eigen::VectorXcd& y,
             std::vector<cplx>& scratch) const;

  SparseCd matrix(const std::map<std::string, cplx>& drives) const;

  // cheap upper bound on ||A(u)||_1 for step-size heuristics
  double norm_bound(const std::map<std::string, cplx>& drives) const;

 private:
  struct Term {
    std::string name;
    bool imag_part = false;
    CsrMatrix csr;
    SparseCd sparse;
  };
  CsrMatrix base_;
  SparseCd base_sparse_;
  std::vector<Term> terms_;
  std::vector<std::string> names_;
};

// Master-equation generator family M(u) over vec(rho).
AffineGeneratorFamily driven_liouvillian(const ParametricLindblad& f);

// Non-Hermitian effective Schroedinger generator family over psi:
//   A(u) = -i H(u) - 1/2 sum_j L_j^dag L_j
AffineGeneratorFamily driven_effective_generator(const ParametricLindblad& f);

}  // namespace kerrsim

#endif  // KERRSIM_LIOUVILLIAN_HPP_
