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

#ifndef KERRSIM_IO_HPP_
#define KERRSIM_IO_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kerrsim/gates.hpp"
#include "kerrsim/schedule.hpp"

namespace kerrsim {

inline constexpr const char* kVersion = "1.0.0";

// Shortest representation that round-trips an IEEE double through text.
std::string format_g17(double x);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex16(std::uint64_t h);

// Plain comma-separated table; every cell is written verbatim.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Writes `body` as pretty JSON with an added "manifest_hash" field holding
// the FNV-1a hash of the body serialized without that field, and returns the
// hash.  Reruns with identical settings produce identical bytes, so the hash
// doubles as a run fingerprint (basis files store it).
std::uint64_t write_manifest(nlohmann::json body,
                             const std::filesystem::path& path);

// Inclusive numeric grid start, start+step, ..., stop (within half a step).
std::vector<double> arange(double start, double stop, double step);

// Demonstration drive programs for the bundled gates, logic LOW = 0 and
// HIGH = alpha on every input.  Segments are two time units long; levels
// ramp linearly over `ramp` at each boundary.
//   AND   (xi1, xi2): (0,0) (H,H) (H,0) (H,H) (0,H) (0,0)       on [0, 12]
//   NOT   (xi):        0     H     0                            on [0, 6]
//   latch (set, reset): (0,H) (H,H) (H,0) (H,H) (0,H)           on [0, 10]
// The latch lines are active low: set = 0 asserts SET.
DriveSchedule and_demo_schedule(const GateParams& p, double ramp = 0.2);
DriveSchedule not_demo_schedule(const GateParams& p, double ramp = 0.2);
DriveSchedule latch_demo_schedule(const GateParams& p, double ramp = 0.2);

// Settings shared by all commands.  Fields left at their sentinels take
// command-specific defaults; load_experiment_config fills them from a JSON
// file and rejects unknown keys.
struct ExperimentConfig {
  std::string experiment = "cavity";  // cavity | and | not | nand_latch
  GateParams params;
  int n = 75;             // full-model levels per mode
  int d = 15;             // retained dimension
  int latch_full_n = 40;  // per-mode levels for the latch full-model check
  double lambda = std::numeric_limits<double>::quiet_NaN();  // default: alpha
  std::vector<double> epsilon_grid;   // steady sweep; default 0..40 step 0.5
  std::vector<double> eval_epsilons;  // fidelity drives; default
                                      // {sqrt(2) alpha, alpha/sqrt(2)}
  std::vector<int> dim_grid;          // fidelity d grid; default 5..75 step 5
  double t_end = -1.0;                // time-series span; command default
  double t_step = -1.0;               // sample spacing; command default
  double sweep_rate = 4.0;            // sweep-time drive epsilon(t) = rate * t
  double ramp = 0.2;
  std::optional<DriveSchedule> schedule;  // gate-sim override
  int trajectories = 100;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  bool long_run = false;
  bool fault_injection = false;       // validate only: negative control
  std::vector<std::string> models;    // subset of {"full", "reduced"}
  std::string basis_file;             // basis input for reduced models
  std::filesystem::path out_dir = "kerrsim-out";
  double steady_residual_tol = 1e-8;
  double master_rtol = 1e-8;
  double master_atol = 1e-12;
  double traj_rtol = 1e-6;
  double traj_atol = 1e-12;

  double effective_lambda() const {
    return std::isnan(lambda) ? params.alpha : lambda;
  }
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

// Commands.  Each writes its CSV/report plus a manifest into cfg.out_dir,
// logs progress to `log`, and returns a process exit code (0 = success).
// Misconfiguration throws std::invalid_argument; solver failures propagate.
int cmd_reduce(const ExperimentConfig& cfg, std::ostream& log);
int cmd_sweep_steady(const ExperimentConfig& cfg, std::ostream& log);
int cmd_sweep_time(const ExperimentConfig& cfg, std::ostream& log);
int cmd_fidelity_curve(const ExperimentConfig& cfg, std::ostream& log);
int cmd_gate_sim(const ExperimentConfig& cfg, std::ostream& log);
int cmd_validate(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace kerrsim

#endif  // KERRSIM_IO_HPP_
