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

#ifndef KERRSIM_STEADY_STATE_HPP_
#define KERRSIM_STEADY_STATE_HPP_

#include <map>
#include <string>

#include "kerrsim/fock.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

struct SteadyStateResult {
  QuantumState state;
  // ||M vec(rho)||_2 of the returned (cleaned) state against the raw
  // generator; must come out below the requested tolerance.
  double residual;
};

// Null vector of the Lindblad generator with unit trace, computed by a
// sparse LU solve with the first row replaced by the trace functional.
// The result is Hermitized, has negative eigenvalues within -1e-10
// clamped to zero, and is renormalized.  Throws if the residual exceeds
// `residual_tol` or the state fails validity checks.
SteadyStateResult steady_state(const LindbladForm& form,
                               double residual_tol = 1e-8);

SteadyStateResult steady_state(const SlhTriple& network,
                               const std::map<std::string, cplx>& drives,
                               double residual_tol = 1e-8);

}  // namespace kerrsim

#endif  // KERRSIM_STEADY_STATE_HPP_
