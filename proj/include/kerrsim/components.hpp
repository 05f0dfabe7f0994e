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

#ifndef KERRSIM_COMPONENTS_HPP
#define KERRSIM_COMPONENTS_HPP

#include "kerrsim/slh.hpp"

namespace kerrsim {

/// n-channel passthrough (I_n, 0, 0).
SlhTriple identity_system(const SpaceDescriptor& space, int n);

/// Two-channel beamsplitter: S = [[cos t, -sin t], [sin t, cos t]].
SlhTriple beamsplitter(const SpaceDescriptor& space, double theta);

/// Single-channel phase shift: S = e^{i phi}.
SlhTriple phase_shift(const SpaceDescriptor& space, double phi);

/// Single-channel coherent displacement (1, amplitude, 0); the amplitude may
/// reference drive parameters.
SlhTriple displacement(const SpaceDescriptor& space, const DriveExpr& amp);

/// Channel permutation: input k exits as output sigma[k] (1-based sigma).
SlhTriple permutation(const SpaceDescriptor& space,
                      const std::vector<int>& sigma);

/// Per-mode annihilation / internal-Hamiltonian pair used by the cavity
/// components, so the same network builders serve full Fock and reduced
/// operators.
struct CavityOps {
  Operator lower;  // mode lowering operator, embedded in the full space
  Operator h0;     // detuning + self-Kerr internal Hamiltonian
};

/// Fock-space cavity operators for one mode.
CavityOps fock_cavity_ops(const SpaceDescriptor& space, int mode,
                          double delta, double chi);

/// Two-channel Kerr cavity (I_2, [sqrt(kappa) a; sqrt(kappa) a], H0).
SlhTriple kerr_cavity(const SpaceDescriptor& space, int mode, double kappa,
                      double delta, double chi);
SlhTriple kerr_cavity(const SpaceDescriptor& space, const CavityOps& ops,
                      double kappa);

/// One-channel halves of the cavity: (1, sqrt(kappa) a, 0) and
/// (1, sqrt(kappa) a, H0).  Composing them against the two ports of the
/// mirror network reproduces the full cavity.
SlhTriple kerr_half1(const SpaceDescriptor& space, int mode, double kappa);
SlhTriple kerr_half1(const SpaceDescriptor& space, const CavityOps& ops,
                     double kappa);
SlhTriple kerr_half2(const SpaceDescriptor& space, int mode, double kappa,
                     double delta, double chi);
SlhTriple kerr_half2(const SpaceDescriptor& space, const CavityOps& ops,
                     double kappa);

}  // namespace kerrsim

#endif  // KERRSIM_COMPONENTS_HPP
