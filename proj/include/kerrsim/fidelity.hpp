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

#ifndef KERRSIM_FIDELITY_HPP_
#define KERRSIM_FIDELITY_HPP_

#include <Eigen/Dense>

#include "kerrsim/fock.hpp"

namespace kerrsim {

// Uhlmann fidelity F = tr sqrt(sqrt(rho) sigma sqrt(rho)).  Eigenvalues
// down to -1e-10 (relative to the matrix scale) are treated as rounding
// and clamped to zero; anything more negative throws.
double state_fidelity(const Eigen::MatrixXcd& rho,
                      const Eigen::MatrixXcd& sigma);
double state_fidelity(const QuantumState& a, const QuantumState& b);

// (1/2) ||rho - sigma||_1.
double trace_distance(const Eigen::MatrixXcd& rho,
                      const Eigen::MatrixXcd& sigma);
double trace_distance(const QuantumState& a, const QuantumState& b);

}  // namespace kerrsim

#endif  // KERRSIM_FIDELITY_HPP_
