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

#ifndef KERRSIM_MASTER_HPP_
#define KERRSIM_MASTER_HPP_

#include <optional>
#include <vector>

#include "kerrsim/observables.hpp"
#include "kerrsim/schedule.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

enum class MasterMethod {
  Auto,          // RK45 for small state spaces, Krylov otherwise
  Rk45Adaptive,  // adaptive Dormand-Prince on vec(rho), exact ramps
  KrylovExpv,    // Krylov exponential steps; ramps use frozen midpoints
};

struct MasterOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  MasterMethod method = MasterMethod::Auto;
  int krylov_m = 30;
  // Krylov path only: number of constant-drive slices per ramp span.
  int ramp_substeps = 50;
  // Track trace/hermiticity (and for moderate dimensions the smallest
  // eigenvalue) of the state at every sample.
  bool check_validity = true;
};

// Integrates the master equation from `initial` (pure states are promoted
// to projectors) across `grid` (ascending; evolution starts at grid[0])
// under the scheduled drives, reporting each observable's mean, i.e.
// <op> + offset(drives(t)).  When `final_state` is non-null it receives
// the density matrix at grid.back().
ExpectationSeries master_evolve(const QuantumState& initial,
                                const ParametricLindblad& system,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const MasterOptions& opts = {},
                                QuantumState* final_state = nullptr);

ExpectationSeries master_evolve(const QuantumState& initial,
                                const SlhTriple& network,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const MasterOptions& opts = {},
                                QuantumState* final_state = nullptr);

}  // namespace kerrsim

#endif  // KERRSIM_MASTER_HPP_
