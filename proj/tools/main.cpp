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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kerrsim/io.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::string experiment;
  std::string basis;
  std::vector<std::string> models;
  std::uint64_t seed = 0;
  int trajectories = 0;
  int n = 0;
  int d = 0;
  int threads = 0;
  bool long_run = false;
};

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config,
                  "JSON experiment configuration file");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--trajectories", f.trajectories,
                  "trajectory ensemble size");
  sub->add_flag("--long", f.long_run,
                "run the long full-scale variants (per-mode 75-level latch)");
  sub->add_option("--experiment", f.experiment,
                  "cavity | and | not | nand_latch");
  sub->add_option("--basis", f.basis, "basis file produced by reduce");
  sub->add_option("--models", f.models,
                  "models to run (full and/or reduced)");
  sub->add_option("--n", f.n, "full-model levels per mode");
  sub->add_option("--d", f.d, "retained dimension");
  sub->add_option("--threads", f.threads, "worker threads (0 = auto)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Kerr-cavity photonic logic: simulation and model reduction harness"};
  app.require_subcommand(1);

  Flags f;
  add_common_flags(
      app.add_subcommand("reduce",
                         "build the reduction basis from cavity steady states"),
      f);
  add_common_flags(
      app.add_subcommand("sweep-steady",
                         "steady-state output fields over a drive grid"),
      f);
  add_common_flags(
      app.add_subcommand("sweep-time",
                         "output fields under a linearly ramped drive"),
      f);
  add_common_flags(
      app.add_subcommand("fidelity-curve",
                         "reduced-model fidelity against retained dimension"),
      f);
  add_common_flags(
      app.add_subcommand("gate-sim",
                         "trajectory-ensemble gate simulation on the demo "
                         "drive programs"),
      f);
  add_common_flags(
      app.add_subcommand("validate",
                         "algebra-equivalence and state-validity checks"),
      f);

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().at(0);

  try {
    kerrsim::ExperimentConfig cfg;
    if (!f.config.empty()) cfg = kerrsim::load_experiment_config(f.config);
    if (sub->count("--out")) cfg.out_dir = f.out;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--trajectories")) cfg.trajectories = f.trajectories;
    if (sub->count("--long")) cfg.long_run = f.long_run;
    if (sub->count("--experiment")) cfg.experiment = f.experiment;
    if (sub->count("--basis")) cfg.basis_file = f.basis;
    if (sub->count("--models")) cfg.models = f.models;
    if (sub->count("--n")) cfg.n = f.n;
    if (sub->count("--d")) cfg.d = f.d;
    if (sub->count("--threads")) cfg.threads = f.threads;

    const std::string name = sub->get_name();
    if (name == "reduce") return kerrsim::cmd_reduce(cfg, std::cout);
    if (name == "sweep-steady") return kerrsim::cmd_sweep_steady(cfg, std::cout);
    if (name == "sweep-time") return kerrsim::cmd_sweep_time(cfg, std::cout);
    if (name == "fidelity-curve")
      return kerrsim::cmd_fidelity_curve(cfg, std::cout);
    if (name == "gate-sim") return kerrsim::cmd_gate_sim(cfg, std::cout);
    if (name == "validate") return kerrsim::cmd_validate(cfg, std::cout);
    std::cerr << "error: unknown subcommand " << name << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
