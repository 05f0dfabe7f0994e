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

#ifndef KERRSIM_MCWF_HPP_
#define KERRSIM_MCWF_HPP_

#include <cstdint>
#include <vector>

#include "kerrsim/observables.hpp"
#include "kerrsim/schedule.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

enum class TrajectoryMethod {
  Auto,          // RK45 for small state spaces, Krylov otherwise
  Rk45Adaptive,  // adaptive steps on the unnormalized wavefunction
  KrylovExpv,    // Krylov exponential steps with in-step collapse search
};

struct TrajectoryConfig {
  int n_trajectories = 100;
  std::uint64_t seed = 1u;
  double rtol = 1e-6;
  double atol = 1e-12;
  int krylov_m = 16;
  TrajectoryMethod method = TrajectoryMethod::Auto;
  int threads = 0;  // 0 uses the hardware concurrency
  // Krylov path only: constant-drive slices per ramp span.
  int ramp_substeps = 100;
};

// Monte Carlo wavefunction unraveling of the master equation.  The
// wavefunction evolves under the drive-dependent non-Hermitian generator
// -iH(u) - 1/2 sum_j L_j^dag L_j; a collapse fires when the squared norm
// falls to a uniform variate, with the channel drawn according to
// ||L_j psi||^2.  Trajectory k uses an independent generator seeded from
// (cfg.seed, k), so results are reproducible and independent of the
// thread count.  Reported means are ensemble averages of normalized
// single-trajectory expectations plus the drive offsets; stderrs hold
// the ensemble standard error sqrt((Var Re + Var Im)/n).
ExpectationSeries mcwf_ensemble(const QuantumState& initial,
                                const ParametricLindblad& system,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const TrajectoryConfig& cfg = {});

ExpectationSeries mcwf_ensemble(const QuantumState& initial,
                                const SlhTriple& network,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const TrajectoryConfig& cfg = {});

}  // namespace kerrsim

#endif  // KERRSIM_MCWF_HPP_
