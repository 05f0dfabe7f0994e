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

#ifndef KERRSIM_GATES_HPP_
#define KERRSIM_GATES_HPP_

#include <string>
#include <vector>

#include "kerrsim/components.hpp"
#include "kerrsim/network.hpp"
#include "kerrsim/observables.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

// Operating point of the Kerr-cavity logic family.  Angles are radians,
// amplitudes are in the flux units of the drive fields.  The cavity numbers
// (kappa, delta, chi) are shared by every gate; each circuit then has its own
// interferometer angles and bias displacements.
struct GateParams {
  double kappa = 25.0;
  double delta = 50.0;
  double chi = -50.0 / 60.0;
  // Logic-HIGH input amplitude.
  double alpha = 22.6274;

  double and_phi = 1.572;
  double and_theta = 1.073;

  double not_theta = 0.891;
  double not_theta_p = 1.071;
  double not_phi_p = 2.03;
  cplx not_beta{-34.289, -11.909};
  cplx not_beta_p{7.833, -17.656};

  double latch_theta = 0.891;
  double latch_phi = 2.546;
  cplx latch_beta{-34.289, -11.909};
  // Recorded with the latch set for completeness; the latch circuit as
  // wired never consumes a second angle pair, so these two are unused.
  double latch_theta_p = 0.566;
  double latch_phi_p = 0.158;
};

enum class GateKind { And, Not, NandLatch };

// Circuit builders.  Each composes the gate from beamsplitters, phase
// shifters, permutations, displacement sources and the supplied cavity
// operators, so the same wiring serves the number-state model
// (fock_cavity_ops) and reduced models (reduced_cavity_ops).
//
// build_and:        3 channels, drive parameters "xi1", "xi2".  The logic
//                   output is the channel-2 field.
// build_not:        5 channels, drive parameter "xi"; the bias displacements
//                   alpha, beta, beta' are fixed amplitudes.  Output is the
//                   channel-4 field.
// build_nand_latch: 6 channels on a two-mode space (mode a = slot 0,
//                   mode b = slot 1), drive parameters "set" and "reset";
//                   the state is read out through the mode photon numbers.
SlhTriple build_and(const CavityOps& cavity, const GateParams& p);
SlhTriple build_not(const CavityOps& cavity, const GateParams& p);
SlhTriple build_nand_latch(const CavityOps& mode_a, const CavityOps& mode_b,
                           const GateParams& p);

// Closed-form triples: the same gates written out directly (scattering
// entries, coupling rows and Hamiltonian typed in), bypassing the
// composition engine.  They serve as independent oracles for the builders;
// passing reduced cavity operators yields the reduced closed forms.
SlhTriple closed_form_and(const CavityOps& cavity, const GateParams& p);
SlhTriple closed_form_not(const CavityOps& cavity, const GateParams& p);
SlhTriple closed_form_nand_latch(const CavityOps& mode_a,
                                 const CavityOps& mode_b, const GateParams& p);

// Compact simulation form of each gate: the Lindblad generator with constant
// coupling offsets absorbed into the Hamiltonian and the dissipator collapsed
// to its minimal channel set.  For AND and NOT every channel dissipates
// through the same mode operator, so a single collapse operator
// sqrt(2 kappa) a carries the full rate; the latch keeps four mixed-mode
// collapse operators.  Trace dynamics are identical to the evaluated
// multi-channel SLH Lindbladian (guarded by tests); only the constant output
// offsets differ, and those live in the Observables, not the generator.
ParametricLindblad and_master_equation(const CavityOps& cavity,
                                       const GateParams& p);
ParametricLindblad not_master_equation(const CavityOps& cavity,
                                       const GateParams& p);
ParametricLindblad latch_master_equation(const CavityOps& mode_a,
                                         const CavityOps& mode_b,
                                         const GateParams& p);
// Dispatcher; `modes` carries one entry for And/Not and two for NandLatch.
// Throws std::invalid_argument on an unknown kind or a mode-count mismatch.
ParametricLindblad gate_master_equation(GateKind kind,
                                        const std::vector<CavityOps>& modes,
                                        const GateParams& p);

// The k-th output field (1-based) of a network as a reportable quantity:
// operator part of L_k plus its c-number drive offset.  Throws if the
// channel's drive dependence is not a plain offset.
Observable output_observable(const SlhTriple& g, int k,
                             const std::string& name);

// Declarative descriptions of the same three circuits, identical in wiring
// to the build_* functions (build_network of these reproduces them).  These
// back the bundled network JSON files; reduced variants come from supplying
// reduced cavity operators at build time.
NetworkDescription and_network(const GateParams& p);
NetworkDescription not_network(const GateParams& p);
NetworkDescription nand_latch_network(const GateParams& p);

}  // namespace kerrsim

#endif  // KERRSIM_GATES_HPP_
