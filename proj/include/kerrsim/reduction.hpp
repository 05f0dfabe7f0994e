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

#ifndef KERRSIM_REDUCTION_HPP
#define KERRSIM_REDUCTION_HPP

#include <cstdint>
#include <string>

#include "kerrsim/components.hpp"
#include "kerrsim/fock.hpp"
#include "kerrsim/jade.hpp"

// Quasi-principal-component model reduction.  A basis is an N x N unitary T
// together with a retained dimension d.  Operators reduce as X_r = P T^* X T P^*
// where the projection P keeps one d-sized block of the rotated coordinates:
// the LAST d for bases built by joint diagonalization (the retained columns
// carry the largest steady-state weights) and the FIRST d for the plain
// Fock-truncation baseline.

namespace kerrsim {

enum class BasisBlock {
  LastColumns,   // P = [O_{d,N-d} I_d]
  FirstColumns,  // P = [I_d O_{d,N-d}]
};

struct ReductionBasis {
  Eigen::MatrixXcd t;            // N x N unitary
  int d = 0;                     // retained dimension
  double lambda = 0.0;           // drive amplitude behind the driven input state
  Eigen::VectorXd diag_weights;  // |diag(Sigma)| after ordering (ascending for
                                 // LastColumns bases; Fock bases store ones)
  BasisBlock block = BasisBlock::LastColumns;
  std::uint64_t manifest_hash = 0;  // hash of the run manifest that created it

  int full_dim() const { return static_cast<int>(t.rows()); }
  /// max |T^* T - I|.
  double unitarity_defect() const;
};

/// Build the reduction basis from the driven and undriven steady states:
/// jointly diagonalize them, form Sigma = T^* rho_drive T + T^* rho_zero T,
/// and reorder the columns of T so the magnitudes of diag(Sigma) ascend left
/// to right (ties keep the original column order).  The last d columns then
/// span the retained subspace.  lambda records the drive behind rho_drive.
/// Throws if the diagonalization inputs are invalid or d is out of range;
/// a non-converged sweep limit is accepted (best unitary so far).
ReductionBasis build_basis(const Eigen::MatrixXcd& rho_drive,
                           const Eigen::MatrixXcd& rho_zero, int d,
                           double lambda, const JadeOptions& opt = {});

/// Baseline basis keeping the first d Fock levels: T = I_N.
ReductionBasis fock_truncation_basis(int n, int d);

/// P T^* X T P^* on the basis's retained block.
Eigen::MatrixXcd reduce_operator(const Eigen::MatrixXcd& x,
                                 const ReductionBasis& basis);
Operator reduce_operator(const Operator& x, const ReductionBasis& basis);

/// Embed a reduced density matrix back into the full space, trace preserved:
/// LastColumns bases give T (0 (+) rho_r) T^*, FirstColumns give rho_r (+) 0.
Eigen::MatrixXcd embed_state(const Eigen::MatrixXcd& rho_r,
                             const ReductionBasis& basis);

/// Reduced cavity operators a_r = P T^* a T P^* and H0_r = P T^* H0 T P^*,
/// computed on the basis's native side and embedded at the given mode of the
/// composite space (whose dimension there must equal basis.d).  Feeding the
/// result to the cavity builders yields the reduced SLH triples; note a_r is
/// generally not a lowering operator and H0_r is not diagonal.
CavityOps reduced_cavity_ops(const ReductionBasis& basis,
                             const SpaceDescriptor& space, int mode,
                             double delta, double chi);

/// Normalized projection of the Fock vacuum onto the retained subspace, the
/// starting state of reduced-model runs.  Throws if the projection is
/// negligible (vacuum orthogonal to the retained span).
QuantumState reduced_vacuum(const ReductionBasis& basis);

// Plain-text basis file:
//
//   kerrsim-basis v1
//   side <N>
//   retained <d>
//   drive <lambda>
//   block last|first
//   manifest-hash <16 hex digits>
//   weights
//   <N values>
//   t
//   <N rows of 2N values, re im pairs>
//
// Values carry 17 significant digits so a round trip is exact.
void save_basis(const ReductionBasis& basis, const std::string& path);
ReductionBasis load_basis(const std::string& path);

}  // namespace kerrsim

#endif  // KERRSIM_REDUCTION_HPP
