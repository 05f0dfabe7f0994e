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

#ifndef KERRSIM_SLH_HPP
#define KERRSIM_SLH_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "kerrsim/fock.hpp"

// Gough-James (S, L, H) network algebra with symbolic drive amplitudes.
//
// Scattering matrices are matrices of plain complex numbers.  Coupling
// operators and Hamiltonians are affine in a set of named drive parameters
// and their conjugates, with concrete Operators as coefficients:
//
//   X(p) = X_const + sum_k  p_k^(c_k) * X_k
//
// where p_k^(c) is the parameter or its conjugate.  All three network
// operations preserve this form.  Products that would create terms quadratic
// in the drives can only arise inside Hamiltonian corrections; there they are
// proportional to the identity (a c-number that only shifts the global phase)
// and are dropped.  A product whose quadratic part is *not* an identity
// multiple is a contract violation and throws.
namespace kerrsim {

/// A drive parameter reference: name plus a conjugation flag.
struct ParamKey {
  std::string name;
  bool conjugated = false;
  auto operator<=>(const ParamKey&) const = default;
};

/// Complex-valued expression, affine in named parameters and conjugates.
class DriveExpr {
 public:
  DriveExpr() = default;
  DriveExpr(cplx constant) : constant_(constant) {}  // NOLINT: implicit ok
  static DriveExpr parameter(const std::string& name, bool conjugated = false);

  const cplx& constant() const { return constant_; }
  const std::map<ParamKey, cplx>& linear() const { return linear_; }
  bool is_constant() const { return linear_.empty(); }

  DriveExpr operator+(const DriveExpr& o) const;
  DriveExpr operator-(const DriveExpr& o) const;
  DriveExpr conj() const;
  friend DriveExpr operator*(cplx s, const DriveExpr& e);

  cplx evaluate(const std::map<std::string, cplx>& values) const;

 private:
  cplx constant_ = 0.0;
  std::map<ParamKey, cplx> linear_;
};

/// Operator-valued expression, affine in drive parameters and conjugates.
class ParametricOperator {
 public:
  ParametricOperator() = default;
  explicit ParametricOperator(Operator constant);
  /// expr * basis_op
  ParametricOperator(const DriveExpr& expr, const Operator& basis_op);

  static ParametricOperator zero(const SpaceDescriptor& space);

  const SpaceDescriptor& space() const { return constant_.space(); }
  const Operator& constant_part() const { return constant_; }
  const std::map<ParamKey, Operator>& linear_parts() const { return linear_; }
  bool is_zero() const;

  ParametricOperator operator+(const ParametricOperator& o) const;
  ParametricOperator operator-(const ParametricOperator& o) const;
  ParametricOperator& operator+=(const ParametricOperator& o);
  friend ParametricOperator operator*(cplx s, const ParametricOperator& o);

  ParametricOperator dagger() const;

  /// Product, dropping identity-proportional drive-quadratic terms.  Throws
  /// if a quadratic term is not proportional to the identity.
  ParametricOperator operator*(const ParametricOperator& o) const;

  /// (X - X^dagger) / 2i
  ParametricOperator im_part() const;

  Operator evaluate(const std::map<std::string, cplx>& values) const;

  /// Split into (operator part, scalar part): the identity component of
  /// every coefficient (the exact multiple where the coefficient is one,
  /// the trace projection otherwise) moves into the returned DriveExpr.
  /// Lindblad dynamics and channel means are invariant under this split;
  /// it exists to give couplings the canonical "operator + offset" shape.
  std::pair<ParametricOperator, DriveExpr> split_identity() const;

 private:
  void drop_zero_terms();
  Operator constant_;
  std::map<ParamKey, Operator> linear_;
};

/// An SLH triple: scattering matrix S (n x n complex scalars), coupling
/// vector L (n parametric operators) and Hamiltonian H, all on one space.
struct SlhTriple {
  Eigen::MatrixXcd S;
  std::vector<ParametricOperator> L;
  ParametricOperator H;
  SpaceDescriptor space;

  int channels() const { return static_cast<int>(L.size()); }
  /// max |S^dagger S - I|; components are unitary to machine precision.
  double scattering_unitarity_defect() const;
  void validate() const;
};

/// Concatenation G1 [+] G2: block-diagonal S, stacked L, summed H.
SlhTriple concat(const SlhTriple& g1, const SlhTriple& g2);

/// Series G2 <| G1 (output of g1 feeds input of g2):
///   (S2 S1, L2 + S2 L1, H1 + H2 + Im(L2^dag S2 L1)).
SlhTriple series(const SlhTriple& g2, const SlhTriple& g1);

/// Feedback [G]_{k->l}: output k is looped into input l (1-based indices of
/// the current system).  The surviving channels keep their relative order and
/// are renumbered consecutively.
SlhTriple feedback(const SlhTriple& g, int k, int l);

/// Evaluated network at fixed drive amplitudes.
struct EvaluatedSlh {
  Eigen::MatrixXcd S;
  std::vector<Operator> L;
  Operator H;
};

/// Bind drive parameters.  Verifies H evaluates Hermitian (within tol).
EvaluatedSlh evaluate(const SlhTriple& g,
                      const std::map<std::string, cplx>& drives,
                      double herm_tol = 1e-10);

/// Standard-form Lindblad generator of the network at fixed drives.  C-number
/// offsets in the couplings are absorbed into the Hamiltonian,
///   L_j = l_j + c_j  =>  H += (i/2) sum_j (conj(c_j) l_j - c_j l_j^dag),
/// which leaves collapse operators free of drive constants.  Channels with a
/// vanishing operator part carry no dissipation and are omitted.
struct LindbladForm {
  Operator H;
  std::vector<Operator> collapse;
};
LindbladForm absorbed_lindblad(const SlhTriple& g,
                               const std::map<std::string, cplx>& drives);

/// Drive-parametric Lindblad generator: a Hamiltonian affine in the drives
/// plus constant collapse operators.  This is the form the simulators
/// consume; the offset absorption keeps it closed under drive changes.
struct ParametricLindblad {
  ParametricOperator H;
  std::vector<Operator> collapse;

  const SpaceDescriptor& space() const { return H.space(); }
  std::vector<std::string> parameter_names() const;
  LindbladForm evaluate(const std::map<std::string, cplx>& drives,
                        double herm_tol = 1e-10) const;
};

/// Symbolic counterpart of absorbed_lindblad: every coupling is split as
/// L_j = l_j + c_j(drives) with a constant operator part l_j, and the
/// c-number offsets move into H += (i/2) sum_j (conj(c_j) l_j - c_j l_j^dag),
/// which stays affine in the drives.  Throws if some coupling's operator part
/// is itself drive-dependent (cannot happen for networks made of the bundled
/// component set, where drives only enter through displacements).
ParametricLindblad absorb_offsets(const SlhTriple& g);

/// Mean of the k-th output field (1-based): <L_k> evaluated at the drives,
/// including the c-number drive offset of that channel.
cplx output_mean(const SlhTriple& g, const QuantumState& state,
                 const std::map<std::string, cplx>& drives, int k);

}  // namespace kerrsim

#endif  // KERRSIM_SLH_HPP
