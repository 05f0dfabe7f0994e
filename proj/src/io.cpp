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

#include "kerrsim/io.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "kerrsim/components.hpp"
#include "kerrsim/fidelity.hpp"
#include "kerrsim/master.hpp"
#include "kerrsim/mcwf.hpp"
#include "kerrsim/reduction.hpp"
#include "kerrsim/steady_state.hpp"

namespace kerrsim {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) {
  throw std::invalid_argument("experiment config: " + what);
}

cplx json_complex(const json& j, const std::string& where) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  bad_config(where + " must be a number or [re, im] pair");
}

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      bad_config("unknown key \"" + it.key() + "\" in " + where);
}

std::vector<double> parse_grid(const json& j, const std::string& where) {
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& e : j) out.push_back(e.get<double>());
    if (out.empty()) bad_config(where + " must not be empty");
    return out;
  }
  if (j.is_object()) {
    require_keys(j, {"start", "stop", "step"}, where);
    if (!j.contains("start") || !j.contains("stop") || !j.contains("step"))
      bad_config(where + " needs start, stop and step");
    return arange(j.at("start").get<double>(), j.at("stop").get<double>(),
                  j.at("step").get<double>());
  }
  bad_config(where + " must be a list or a {start, stop, step} object");
}

GateParams parse_gate_params(const json& j, GateParams p) {
  require_keys(j,
               {"kappa", "delta", "chi", "alpha", "and_phi", "and_theta",
                "not_theta", "not_theta_p", "not_phi_p", "not_beta",
                "not_beta_p", "latch_theta", "latch_phi", "latch_beta",
                "latch_theta_p", "latch_phi_p"},
               "\"parameters\"");
  p.kappa = j.value("kappa", p.kappa);
  p.delta = j.value("delta", p.delta);
  p.chi = j.value("chi", p.chi);
  p.alpha = j.value("alpha", p.alpha);
  p.and_phi = j.value("and_phi", p.and_phi);
  p.and_theta = j.value("and_theta", p.and_theta);
  p.not_theta = j.value("not_theta", p.not_theta);
  p.not_theta_p = j.value("not_theta_p", p.not_theta_p);
  p.not_phi_p = j.value("not_phi_p", p.not_phi_p);
  if (j.contains("not_beta")) p.not_beta = json_complex(j.at("not_beta"), "not_beta");
  if (j.contains("not_beta_p"))
    p.not_beta_p = json_complex(j.at("not_beta_p"), "not_beta_p");
  p.latch_theta = j.value("latch_theta", p.latch_theta);
  p.latch_phi = j.value("latch_phi", p.latch_phi);
  if (j.contains("latch_beta"))
    p.latch_beta = json_complex(j.at("latch_beta"), "latch_beta");
  p.latch_theta_p = j.value("latch_theta_p", p.latch_theta_p);
  p.latch_phi_p = j.value("latch_phi_p", p.latch_phi_p);
  return p;
}

json gate_params_json(const GateParams& p) {
  json j;
  j["kappa"] = p.kappa;
  j["delta"] = p.delta;
  j["chi"] = p.chi;
  j["alpha"] = p.alpha;
  j["and_phi"] = p.and_phi;
  j["and_theta"] = p.and_theta;
  j["not_theta"] = p.not_theta;
  j["not_theta_p"] = p.not_theta_p;
  j["not_phi_p"] = p.not_phi_p;
  j["not_beta"] = complex_json(p.not_beta);
  j["not_beta_p"] = complex_json(p.not_beta_p);
  j["latch_theta"] = p.latch_theta;
  j["latch_phi"] = p.latch_phi;
  j["latch_beta"] = complex_json(p.latch_beta);
  j["latch_theta_p"] = p.latch_theta_p;
  j["latch_phi_p"] = p.latch_phi_p;
  return j;
}

DriveSchedule parse_schedule(const json& j, double default_ramp) {
  require_keys(j, {"ramp", "segments"}, "\"schedule\"");
  if (!j.contains("segments") || !j.at("segments").is_array() ||
      j.at("segments").empty())
    bad_config("\"schedule\" needs a non-empty \"segments\" array");
  std::vector<DriveSegment> segments;
  for (const auto& s : j.at("segments")) {
    require_keys(s, {"t0", "t1", "levels"}, "schedule segment");
    if (!s.contains("t0") || !s.contains("t1") || !s.contains("levels"))
      bad_config("schedule segments need t0, t1 and levels");
    DriveSegment seg;
    seg.t0 = s.at("t0").get<double>();
    seg.t1 = s.at("t1").get<double>();
    for (const auto& [name, level] : s.at("levels").items())
      seg.levels[name] = json_complex(level, "drive level \"" + name + "\"");
    segments.push_back(std::move(seg));
  }
  return DriveSchedule(std::move(segments), j.value("ramp", default_ramp));
}

json schedule_knots_json(const DriveSchedule& s) {
  json knots = json::array();
  for (double t : s.knots()) {
    json levels = json::object();
    for (const auto& [name, value] : s.drives_at(t))
      levels[name] = complex_json(value);
    knots.push_back(json{{"t", t}, {"levels", std::move(levels)}});
  }
  return json{{"ramp", s.ramp_duration()}, {"knots", std::move(knots)}};
}

json versions_json() {
  return json{{"kerrsim", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"compiler", __VERSION__}};
}

json manifest_base(const std::string& command, const ExperimentConfig& cfg) {
  return json{{"command", command},
              {"config", to_json(cfg)},
              {"versions", versions_json()}};
}

// Runs fn(0..n-1) on a shared worker pool; the first exception wins and is
// rethrown after the pool drains.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(1, std::min(t, n));
  if (t == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Kerr cavity fed through its first mirror by the coherent drive "epsilon".
// Channel 1 runs back toward the source (reflection), channel 2 leaves the
// far mirror (transmission).
SlhTriple driven_cavity(const CavityOps& ops, double kappa) {
  const SpaceDescriptor& sp = ops.lower.space();
  return series(kerr_cavity(sp, ops, kappa),
                concat(displacement(sp, DriveExpr::parameter("epsilon")),
                       identity_system(sp, 1)));
}

std::vector<std::string> resolve_models(const ExperimentConfig& cfg,
                                        std::vector<std::string> fallback) {
  std::vector<std::string> wanted =
      cfg.models.empty() ? std::move(fallback) : cfg.models;
  std::vector<std::string> out;
  for (const auto& m : wanted) {
    if (m != "full" && m != "reduced")
      bad_config("unknown model \"" + m + "\" (expected full or reduced)");
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (std::find(out.begin(), out.end(), "reduced") != out.end() &&
      cfg.basis_file.empty())
    bad_config(
        "a reduced model needs \"basis\" pointing at a saved basis file "
        "(run reduce first)");
  return out;
}

std::string csv_name(const std::string& command) { return command + ".csv"; }
std::string manifest_name(const std::string& command) {
  return command + ".manifest.json";
}

GateKind parse_gate_kind(const std::string& experiment) {
  if (experiment == "and") return GateKind::And;
  if (experiment == "not") return GateKind::Not;
  if (experiment == "nand_latch") return GateKind::NandLatch;
  bad_config("gate-sim needs experiment set to and, not or nand_latch (got \"" +
             experiment + "\")");
}

// Product state |vac_r> (x) |vac_r> for the two-mode reduced latch.
QuantumState reduced_pair_vacuum(const ReductionBasis& basis,
                                 const SpaceDescriptor& sp) {
  const Eigen::VectorXcd v = reduced_vacuum(basis).vector();
  const int d = static_cast<int>(v.size());
  Eigen::VectorXcd out(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[i * d + j] = v[i] * v[j];
  return QuantumState::pure(sp, out);
}

json validity_json(const StateValiditySummary& v) {
  return json{{"max_trace_defect", v.max_trace_defect},
              {"max_hermiticity_defect", v.max_hermiticity_defect},
              {"min_eigenvalue", v.min_eigenvalue},
              {"checked_states", v.checked_states}};
}

void require_valid(const ExpectationSeries& series, const std::string& what) {
  if (!series.validity.ok(1e-10))
    throw std::runtime_error(
        what + ": a reported state failed the density-matrix validity check");
}

//  --- validate command plumbing ---

struct CheckEntry {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

void add_check(std::vector<CheckEntry>& out, std::ostream& log,
               std::string name, double measured, double tolerance,
               std::string detail = "") {
  const bool passed = measured <= tolerance;
  log << (passed ? "PASS  " : "FAIL  ") << name << "  (measured "
      << format_g17(measured) << ", tolerance " << format_g17(tolerance)
      << ")\n";
  out.push_back(
      {std::move(name), passed, measured, tolerance, std::move(detail)});
}

std::map<std::string, cplx> random_drives(const std::vector<std::string>& names,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  std::map<std::string, cplx> out;
  for (const auto& n : names) out[n] = cplx(u(rng), u(rng));
  return out;
}

struct TripleDiff {
  double scattering = 0.0;
  double couplings = 0.0;
  double hamiltonian = 0.0;
};

// Worst entrywise differences between two triples over random drive
// assignments; Hamiltonians are compared modulo an identity multiple.
TripleDiff compare_triples(const SlhTriple& a, const SlhTriple& b,
                           const std::vector<std::string>& drive_names,
                           std::uint64_t seed) {
  TripleDiff diff;
  diff.scattering = (a.S - b.S).cwiseAbs().maxCoeff();
  std::mt19937_64 rng(seed);
  const int dim = a.space.total_dim();
  for (int trial = 0; trial < 5; ++trial) {
    const auto drives = random_drives(drive_names, rng);
    const EvaluatedSlh ea = evaluate(a, drives);
    const EvaluatedSlh eb = evaluate(b, drives);
    for (int k = 0; k < a.channels(); ++k)
      diff.couplings =
          std::max(diff.couplings,
                   ea.L[static_cast<std::size_t>(k)].max_abs_distance(
                       eb.L[static_cast<std::size_t>(k)]));
    Eigen::MatrixXcd dh = ea.H.dense() - eb.H.dense();
    dh -= (dh.trace() / static_cast<double>(dim)) *
          Eigen::MatrixXcd::Identity(dim, dim);
    diff.hamiltonian = std::max(diff.hamiltonian, dh.cwiseAbs().maxCoeff());
  }
  return diff;
}

Eigen::MatrixXcd random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = cplx(g(rng), g(rng));
  Eigen::MatrixXcd rho = x * x.adjoint();
  rho /= rho.trace();
  return rho;
}

Eigen::MatrixXcd lindblad_action(const LindbladForm& form,
                                 const Eigen::MatrixXcd& rho) {
  const cplx im(0.0, 1.0);
  const Eigen::MatrixXcd h = form.H.dense();
  Eigen::MatrixXcd out = -im * (h * rho - rho * h);
  for (const auto& c : form.collapse) {
    const Eigen::MatrixXcd l = c.dense();
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

// Largest relative difference of the two generators' action on random
// densities at random drives.
double generator_distance(const ParametricLindblad& a,
                          const ParametricLindblad& b,
                          const std::vector<std::string>& drive_names,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int dim = a.space().total_dim();
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto drives = random_drives(drive_names, rng);
    const LindbladForm fa = a.evaluate(drives);
    const LindbladForm fb = b.evaluate(drives);
    const Eigen::MatrixXcd rho = random_density(dim, rng);
    const Eigen::MatrixXcd da = lindblad_action(fa, rho);
    const Eigen::MatrixXcd db = lindblad_action(fb, rho);
    const double scale = std::max(1.0, da.cwiseAbs().maxCoeff());
    worst = std::max(worst, (da - db).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  if (!path.parent_path().empty())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k)
    out << (k ? "," : "") << header[k];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::logic_error("csv row width does not match the header");
    for (std::size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << row[k];
    out << "\n";
  }
}

std::uint64_t write_manifest(json body, const std::filesystem::path& path) {
  if (!body.is_object())
    throw std::invalid_argument("manifest body must be a JSON object");
  body.erase("manifest_hash");
  const std::uint64_t h = fnv1a64(body.dump(2));
  body["manifest_hash"] = hex16(h);
  if (!path.parent_path().empty())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << body.dump(2) << "\n";
  return h;
}

std::vector<double> arange(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("arange: step must be positive");
  if (stop < start) throw std::invalid_argument("arange: stop precedes start");
  const int count = static_cast<int>(std::floor((stop - start) / step + 0.5));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) {
    double v = start + step * i;
    if (std::abs(v - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) v = stop;
    out.push_back(v);
  }
  return out;
}

DriveSchedule and_demo_schedule(const GateParams& p, double ramp) {
  const cplx h(p.alpha, 0.0), l(0.0, 0.0);
  return DriveSchedule({{0.0, 2.0, {{"xi1", l}, {"xi2", l}}},
                        {2.0, 4.0, {{"xi1", h}, {"xi2", h}}},
                        {4.0, 6.0, {{"xi1", h}, {"xi2", l}}},
                        {6.0, 8.0, {{"xi1", h}, {"xi2", h}}},
                        {8.0, 10.0, {{"xi1", l}, {"xi2", h}}},
                        {10.0, 12.0, {{"xi1", l}, {"xi2", l}}}},
                       ramp);
}

DriveSchedule not_demo_schedule(const GateParams& p, double ramp) {
  const cplx h(p.alpha, 0.0), l(0.0, 0.0);
  return DriveSchedule({{0.0, 2.0, {{"xi", l}}},
                        {2.0, 4.0, {{"xi", h}}},
                        {4.0, 6.0, {{"xi", l}}}},
                       ramp);
}

DriveSchedule latch_demo_schedule(const GateParams& p, double ramp) {
  const cplx h(p.alpha, 0.0), l(0.0, 0.0);
  return DriveSchedule({{0.0, 2.0, {{"set", l}, {"reset", h}}},
                        {2.0, 4.0, {{"set", h}, {"reset", h}}},
                        {4.0, 6.0, {{"set", h}, {"reset", l}}},
                        {6.0, 8.0, {{"set", h}, {"reset", h}}},
                        {8.0, 10.0, {{"set", l}, {"reset", h}}}},
                       ramp);
}

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) bad_config("top level must be an object");
  require_keys(j,
               {"experiment", "parameters", "n", "d", "latch_full_n", "lambda",
                "epsilon", "epsilons", "dims", "t_end", "t_step", "sweep_rate",
                "ramp", "schedule", "schedule_knots", "trajectories", "seed",
                "threads", "long", "fault_injection", "models", "basis", "out",
                "tolerances"},
               "config");
  ExperimentConfig c;
  c.experiment = j.value("experiment", c.experiment);
  if (j.contains("parameters"))
    c.params = parse_gate_params(j.at("parameters"), c.params);
  c.n = j.value("n", c.n);
  if (c.n < 1) bad_config("n must be positive");
  c.d = j.value("d", c.d);
  if (c.d < 1) bad_config("d must be positive");
  c.latch_full_n = j.value("latch_full_n", c.latch_full_n);
  if (c.latch_full_n < 1) bad_config("latch_full_n must be positive");
  if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
  if (j.contains("epsilon"))
    c.epsilon_grid = parse_grid(j.at("epsilon"), "\"epsilon\"");
  if (j.contains("epsilons"))
    for (const auto& e : j.at("epsilons"))
      c.eval_epsilons.push_back(e.get<double>());
  if (j.contains("dims"))
    for (const auto& e : j.at("dims")) c.dim_grid.push_back(e.get<int>());
  c.t_end = j.value("t_end", c.t_end);
  c.t_step = j.value("t_step", c.t_step);
  c.sweep_rate = j.value("sweep_rate", c.sweep_rate);
  c.ramp = j.value("ramp", c.ramp);
  if (j.contains("schedule"))
    c.schedule = parse_schedule(j.at("schedule"), c.ramp);
  c.trajectories = j.value("trajectories", c.trajectories);
  if (c.trajectories < 1) bad_config("trajectories must be positive");
  c.seed = j.value("seed", c.seed);
  c.threads = j.value("threads", c.threads);
  c.long_run = j.value("long", c.long_run);
  c.fault_injection = j.value("fault_injection", c.fault_injection);
  if (j.contains("models"))
    for (const auto& m : j.at("models"))
      c.models.push_back(m.get<std::string>());
  c.basis_file = j.value("basis", c.basis_file);
  if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    require_keys(t,
                 {"steady_residual", "master_rtol", "master_atol", "traj_rtol",
                  "traj_atol"},
                 "\"tolerances\"");
    c.steady_residual_tol = t.value("steady_residual", c.steady_residual_tol);
    c.master_rtol = t.value("master_rtol", c.master_rtol);
    c.master_atol = t.value("master_atol", c.master_atol);
    c.traj_rtol = t.value("traj_rtol", c.traj_rtol);
    c.traj_atol = t.value("traj_atol", c.traj_atol);
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    bad_config(path.string() + ": " + e.what());
  }
  return parse_experiment_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = cfg.experiment;
  j["parameters"] = gate_params_json(cfg.params);
  j["n"] = cfg.n;
  j["d"] = cfg.d;
  j["latch_full_n"] = cfg.latch_full_n;
  j["lambda"] = cfg.effective_lambda();
  if (!cfg.epsilon_grid.empty()) j["epsilon"] = cfg.epsilon_grid;
  if (!cfg.eval_epsilons.empty()) j["epsilons"] = cfg.eval_epsilons;
  if (!cfg.dim_grid.empty()) j["dims"] = cfg.dim_grid;
  if (cfg.t_end >= 0.0) j["t_end"] = cfg.t_end;
  if (cfg.t_step >= 0.0) j["t_step"] = cfg.t_step;
  j["sweep_rate"] = cfg.sweep_rate;
  j["ramp"] = cfg.ramp;
  if (cfg.schedule) j["schedule_knots"] = schedule_knots_json(*cfg.schedule);
  j["trajectories"] = cfg.trajectories;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["long"] = cfg.long_run;
  j["fault_injection"] = cfg.fault_injection;
  if (!cfg.models.empty()) j["models"] = cfg.models;
  if (!cfg.basis_file.empty()) j["basis"] = cfg.basis_file;
  j["out"] = cfg.out_dir.string();
  j["tolerances"] = json{{"steady_residual", cfg.steady_residual_tol},
                         {"master_rtol", cfg.master_rtol},
                         {"master_atol", cfg.master_atol},
                         {"traj_rtol", cfg.traj_rtol},
                         {"traj_atol", cfg.traj_atol}};
  return j;
}

int cmd_reduce(const ExperimentConfig& cfg_in, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.experiment != "cavity")
    bad_config("reduce builds the driven-cavity basis; set experiment to "
               "\"cavity\"");
  const double lambda = cfg.effective_lambda();
  if (lambda == 0.0)
    bad_config(
        "lambda = 0 makes the driven and undriven steady states identical, "
        "so the joint diagonalization has no second target; choose a nonzero "
        "basis drive");
  if (cfg.d < 1 || cfg.d > cfg.n)
    bad_config("retained dimension d must lie in [1, n]");
  std::filesystem::create_directories(cfg.out_dir);

  const GateParams& p = cfg.params;
  const SpaceDescriptor sp({cfg.n});
  const SlhTriple g = driven_cavity(fock_cavity_ops(sp, 0, p.delta, p.chi),
                                    p.kappa);
  log << "reduce: solving driven (epsilon = " << format_g17(lambda)
      << ") and undriven steady states at n = " << cfg.n << "\n";
  const SteadyStateResult driven =
      steady_state(g, {{"epsilon", cplx(lambda, 0.0)}}, cfg.steady_residual_tol);
  const SteadyStateResult zero =
      steady_state(g, {{"epsilon", cplx(0.0, 0.0)}}, cfg.steady_residual_tol);

  ReductionBasis basis =
      build_basis(driven.state.matrix(), zero.state.matrix(), cfg.d, lambda);

  json m = manifest_base("reduce", cfg);
  m["outputs"] = json{{"basis", "basis.txt"}};
  m["results"] = json{{"driven_residual", driven.residual},
                      {"zero_residual", zero.residual},
                      {"basis_unitarity_defect", basis.unitarity_defect()}};
  basis.manifest_hash =
      write_manifest(std::move(m), cfg.out_dir / manifest_name("reduce"));
  save_basis(basis, (cfg.out_dir / "basis.txt").string());
  log << "reduce: wrote basis.txt (d = " << cfg.d << ", unitarity defect "
      << format_g17(basis.unitarity_defect()) << ")\n";
  return 0;
}

int cmd_sweep_steady(const ExperimentConfig& cfg_in, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.experiment != "cavity")
    bad_config("steady sweeps run the driven cavity; set experiment to "
               "\"cavity\"");
  if (cfg.epsilon_grid.empty()) cfg.epsilon_grid = arange(0.0, 40.0, 0.5);
  cfg.models = resolve_models(
      cfg, cfg.basis_file.empty()
               ? std::vector<std::string>{"full"}
               : std::vector<std::string>{"full", "reduced"});
  std::filesystem::create_directories(cfg.out_dir);

  const GateParams& p = cfg.params;
  const auto& grid = cfg.epsilon_grid;
  // [model][epsilon] -> {transmitted, reflected} magnitudes
  std::map<std::string, std::vector<std::array<double, 2>>> mags;
  for (const auto& model : cfg.models) {
    SlhTriple g;
    if (model == "full") {
      const SpaceDescriptor sp({cfg.n});
      g = driven_cavity(fock_cavity_ops(sp, 0, p.delta, p.chi), p.kappa);
    } else {
      const ReductionBasis basis = load_basis(cfg.basis_file);
      const SpaceDescriptor sp({basis.d});
      g = driven_cavity(reduced_cavity_ops(basis, sp, 0, p.delta, p.chi),
                        p.kappa);
    }
    auto& out = mags[model];
    out.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
      const std::map<std::string, cplx> drives{
          {"epsilon", cplx(grid[static_cast<std::size_t>(i)], 0.0)}};
      const SteadyStateResult ss =
          steady_state(g, drives, cfg.steady_residual_tol);
      out[static_cast<std::size_t>(i)] = {
          std::abs(output_mean(g, ss.state, drives, 2)),
          std::abs(output_mean(g, ss.state, drives, 1))};
    });
    log << "sweep-steady: " << model << " model done (" << grid.size()
        << " drive points)\n";
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& model : cfg.models) {
    const auto& out = mags.at(model);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows.push_back({format_g17(grid[i]), model, "transmitted",
                      format_g17(out[i][0])});
      rows.push_back({format_g17(grid[i]), model, "reflected",
                      format_g17(out[i][1])});
    }
  }
  write_csv(cfg.out_dir / csv_name("sweep_steady"),
            {"epsilon", "model", "channel", "abs_mean"}, rows);

  json results;
  if (mags.count("full") && grid.size() >= 2) {
    const auto& full = mags.at("full");
    double best_slope = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double dg = grid[i + 1] - grid[i];
      if (dg <= 0.0) continue;
      const double slope = std::abs((full[i + 1][0] - full[i][0]) / dg);
      if (slope > best_slope) {
        best_slope = slope;
        best = i;
      }
    }
    results["max_slope_epsilon"] = 0.5 * (grid[best] + grid[best + 1]);
    results["max_slope_value"] = best_slope;
  }
  if (mags.count("full") && mags.count("reduced")) {
    const double window = std::sqrt(2.0) * p.alpha;
    const auto& full = mags.at("full");
    const auto& red = mags.at("reduced");
    double fmax[2] = {0.0, 0.0}, dmax[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] > window + 1e-9) continue;
      for (int c = 0; c < 2; ++c) {
        fmax[c] = std::max(fmax[c], std::abs(full[i][c]));
        dmax[c] = std::max(dmax[c], std::abs(red[i][c] - full[i][c]));
      }
    }
    // Deviation in the relative sup norm over the window; a pointwise ratio
    // is undefined at epsilon = 0 where the full-model outputs vanish.
    results["transmitted_rel_deviation"] =
        fmax[0] > 0.0 ? dmax[0] / fmax[0] : 0.0;
    results["reflected_rel_deviation"] =
        fmax[1] > 0.0 ? dmax[1] / fmax[1] : 0.0;
    results["deviation_window_max_epsilon"] = window;
  }
  json m = manifest_base("sweep-steady", cfg);
  m["outputs"] = json{{"csv", csv_name("sweep_steady")}};
  m["results"] = std::move(results);
  write_manifest(std::move(m), cfg.out_dir / manifest_name("sweep_steady"));
  return 0;
}

int cmd_sweep_time(const ExperimentConfig& cfg_in, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.experiment != "cavity")
    bad_config("time sweeps run the driven cavity; set experiment to "
               "\"cavity\"");
  if (cfg.t_end < 0.0) cfg.t_end = 10.0;
  if (cfg.t_step < 0.0) cfg.t_step = 0.05;
  cfg.models = resolve_models(
      cfg, cfg.basis_file.empty()
               ? std::vector<std::string>{"full"}
               : std::vector<std::string>{"full", "reduced"});
  std::filesystem::create_directories(cfg.out_dir);

  const GateParams& p = cfg.params;
  const std::vector<double> grid = arange(0.0, cfg.t_end, cfg.t_step);
  const DriveSchedule schedule = DriveSchedule::linear_sweep(
      "epsilon", cplx(0.0, 0.0), cplx(cfg.sweep_rate * cfg.t_end, 0.0), 0.0,
      cfg.t_end);

  std::vector<std::vector<std::string>> rows;
  json validity;
  for (const auto& model : cfg.models) {
    SlhTriple g;
    QuantumState initial = QuantumState::vacuum(SpaceDescriptor({1}));
    if (model == "full") {
      const SpaceDescriptor sp({cfg.n});
      g = driven_cavity(fock_cavity_ops(sp, 0, p.delta, p.chi), p.kappa);
      initial = QuantumState::vacuum(sp);
    } else {
      const ReductionBasis basis = load_basis(cfg.basis_file);
      const SpaceDescriptor sp({basis.d});
      g = driven_cavity(reduced_cavity_ops(basis, sp, 0, p.delta, p.chi),
                        p.kappa);
      initial = reduced_vacuum(basis);
    }
    const std::vector<Observable> obs = {
        output_observable(g, 2, "transmitted"),
        output_observable(g, 1, "reflected")};
    MasterOptions mo;
    mo.rtol = cfg.master_rtol;
    mo.atol = cfg.master_atol;
    const ExpectationSeries series =
        master_evolve(initial, g, schedule, grid, obs, mo);
    require_valid(series, "sweep-time (" + model + " model)");
    validity[model] = validity_json(series.validity);
    for (std::size_t k = 0; k < series.names.size(); ++k)
      for (std::size_t i = 0; i < series.time.size(); ++i) {
        const cplx v = series.means[k][i];
        rows.push_back({format_g17(series.time[i]), model, series.names[k],
                        format_g17(v.real()), format_g17(v.imag()),
                        format_g17(std::abs(v))});
      }
    log << "sweep-time: " << model << " model done (" << grid.size()
        << " samples)\n";
  }
  write_csv(cfg.out_dir / csv_name("sweep_time"),
            {"time", "model", "channel", "re_mean", "im_mean", "abs_mean"},
            rows);
  json m = manifest_base("sweep-time", cfg);
  m["outputs"] = json{{"csv", csv_name("sweep_time")}};
  m["results"] = json{{"validity", std::move(validity)}};
  write_manifest(std::move(m), cfg.out_dir / manifest_name("sweep_time"));
  return 0;
}

int cmd_fidelity_curve(const ExperimentConfig& cfg_in, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.experiment != "cavity")
    bad_config("fidelity curves run the driven cavity; set experiment to "
               "\"cavity\"");
  if (cfg.dim_grid.empty())
    for (int d = 5; d <= cfg.n; d += 5) cfg.dim_grid.push_back(d);
  if (cfg.eval_epsilons.empty())
    cfg.eval_epsilons = {std::sqrt(2.0) * cfg.params.alpha,
                         cfg.params.alpha / std::sqrt(2.0)};
  for (int d : cfg.dim_grid)
    if (d < 1 || d > cfg.n) bad_config("dims entries must lie in [1, n]");
  const double lambda = cfg.effective_lambda();
  if (lambda == 0.0) bad_config("lambda = 0 leaves no drive to build the basis from");
  std::filesystem::create_directories(cfg.out_dir);

  const GateParams& p = cfg.params;
  const SpaceDescriptor sp({cfg.n});
  const SlhTriple g =
      driven_cavity(fock_cavity_ops(sp, 0, p.delta, p.chi), p.kappa);

  log << "fidelity-curve: building the basis at lambda = "
      << format_g17(lambda) << "\n";
  const SteadyStateResult rho_lambda =
      steady_state(g, {{"epsilon", cplx(lambda, 0.0)}}, cfg.steady_residual_tol);
  const SteadyStateResult rho_zero =
      steady_state(g, {{"epsilon", cplx(0.0, 0.0)}}, cfg.steady_residual_tol);
  // One diagonalization serves every d: the retained block is a suffix of
  // the ordered columns, so smaller d just keeps fewer of them.
  const ReductionBasis seed_basis = build_basis(
      rho_lambda.state.matrix(), rho_zero.state.matrix(), cfg.n, lambda);

  struct Task {
    double epsilon;
    int d;
    bool fock;
  };
  std::vector<Task> tasks;
  for (double eps : cfg.eval_epsilons)
    for (int d : cfg.dim_grid)
      for (int fock = 0; fock < 2; ++fock)
        tasks.push_back({eps, d, fock == 1});

  std::map<double, Eigen::MatrixXcd> full_states;
  for (double eps : cfg.eval_epsilons) {
    if (full_states.count(eps)) continue;
    full_states[eps] =
        steady_state(g, {{"epsilon", cplx(eps, 0.0)}}, cfg.steady_residual_tol)
            .state.matrix();
  }
  log << "fidelity-curve: full steady states ready ("
      << full_states.size() << " drive points)\n";

  std::vector<double> fidelities(tasks.size(), 0.0);
  std::mutex validity_mutex;
  StateValiditySummary validity;
  parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int ti) {
    const Task& task = tasks[static_cast<std::size_t>(ti)];
    ReductionBasis basis;
    if (task.fock) {
      basis = fock_truncation_basis(cfg.n, task.d);
    } else {
      basis = seed_basis;
      basis.d = task.d;
    }
    const SpaceDescriptor spd({task.d});
    const SlhTriple gr = driven_cavity(
        reduced_cavity_ops(basis, spd, 0, p.delta, p.chi), p.kappa);
    const SteadyStateResult rr = steady_state(
        gr, {{"epsilon", cplx(task.epsilon, 0.0)}}, cfg.steady_residual_tol);
    const Eigen::MatrixXcd embedded = embed_state(rr.state.matrix(), basis);
    const QuantumState back = QuantumState::density(sp, embedded);
    const auto check = back.check();
    {
      const std::lock_guard<std::mutex> lock(validity_mutex);
      validity.absorb(check);
    }
    if (!check.ok(1e-10))
      throw std::runtime_error(
          "fidelity-curve: embedded reduced state failed validity checks");
    fidelities[static_cast<std::size_t>(ti)] =
        state_fidelity(full_states.at(task.epsilon), embedded);
  });

  std::vector<std::vector<std::string>> rows;
  for (std::size_t ti = 0; ti < tasks.size(); ++ti)
    rows.push_back({format_g17(tasks[ti].epsilon), std::to_string(tasks[ti].d),
                    tasks[ti].fock ? "fock" : "jade",
                    format_g17(fidelities[ti])});
  write_csv(cfg.out_dir / csv_name("fidelity_curve"),
            {"epsilon", "d", "method", "fidelity"}, rows);

  // Smallest retained dimension reaching 0.99, per drive and method.
  json thresholds = json::array();
  for (double eps : cfg.eval_epsilons) {
    for (int fock = 0; fock < 2; ++fock) {
      int first = -1;
      for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        const Task& t = tasks[ti];
        if (t.epsilon != eps || t.fock != (fock == 1)) continue;
        if (fidelities[ti] >= 0.99 && (first < 0 || t.d < first)) first = t.d;
      }
      thresholds.push_back(json{{"epsilon", eps},
                                {"method", fock ? "fock" : "jade"},
                                {"first_d_at_0.99", first}});
    }
  }
  json m = manifest_base("fidelity-curve", cfg);
  m["outputs"] = json{{"csv", csv_name("fidelity_curve")}};
  m["results"] = json{{"fidelity_thresholds", std::move(thresholds)},
                      {"validity", validity_json(validity)}};
  write_manifest(std::move(m), cfg.out_dir / manifest_name("fidelity_curve"));
  return 0;
}

int cmd_gate_sim(const ExperimentConfig& cfg_in, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  const GateKind kind = parse_gate_kind(cfg.experiment);
  const GateParams& p = cfg.params;
  const DriveSchedule schedule =
      cfg.schedule ? *cfg.schedule
                   : (kind == GateKind::And
                          ? and_demo_schedule(p, cfg.ramp)
                          : kind == GateKind::Not
                                ? not_demo_schedule(p, cfg.ramp)
                                : latch_demo_schedule(p, cfg.ramp));
  if (cfg.t_end < 0.0) cfg.t_end = schedule.t_end();
  if (cfg.t_step < 0.0) cfg.t_step = 0.05;
  cfg.models = resolve_models(cfg, {"reduced"});
  std::filesystem::create_directories(cfg.out_dir);

  const std::vector<double> grid =
      arange(schedule.t_begin(), cfg.t_end, cfg.t_step);
  const int modes = kind == GateKind::NandLatch ? 2 : 1;

  std::vector<std::vector<std::string>> rows;
  json validity;
  for (const auto& model : cfg.models) {
    std::vector<CavityOps> ops;
    SpaceDescriptor sp;
    QuantumState initial = QuantumState::vacuum(SpaceDescriptor({1}));
    ReductionBasis basis;
    if (model == "reduced") {
      basis = load_basis(cfg.basis_file);
      sp = SpaceDescriptor(std::vector<int>(
          static_cast<std::size_t>(modes), basis.d));
      for (int m = 0; m < modes; ++m)
        ops.push_back(reduced_cavity_ops(basis, sp, m, p.delta, p.chi));
      initial = modes == 1 ? reduced_vacuum(basis)
                           : reduced_pair_vacuum(basis, sp);
    } else {
      const int n = kind == GateKind::NandLatch
                        ? (cfg.long_run ? cfg.n : cfg.latch_full_n)
                        : cfg.n;
      sp = SpaceDescriptor(std::vector<int>(static_cast<std::size_t>(modes), n));
      for (int m = 0; m < modes; ++m)
        ops.push_back(fock_cavity_ops(sp, m, p.delta, p.chi));
      initial = QuantumState::vacuum(sp);
    }

    SlhTriple g;
    switch (kind) {
      case GateKind::And:
        g = build_and(ops[0], p);
        break;
      case GateKind::Not:
        g = build_not(ops[0], p);
        break;
      case GateKind::NandLatch:
        g = build_nand_latch(ops[0], ops[1], p);
        break;
    }
    const ParametricLindblad sys = gate_master_equation(kind, ops, p);

    std::vector<Observable> obs;
    if (kind == GateKind::And) {
      obs.push_back(output_observable(g, 2, "output"));
    } else if (kind == GateKind::Not) {
      obs.push_back(output_observable(g, 4, "output"));
    } else if (model == "reduced") {
      const Operator n_r = reduce_operator(
          number_op(SpaceDescriptor({basis.full_dim()}), 0), basis);
      obs.emplace_back("n_a", embed(n_r, sp, 0));
      obs.emplace_back("n_b", embed(n_r, sp, 1));
    } else {
      obs.emplace_back("n_a", number_op(sp, 0));
      obs.emplace_back("n_b", number_op(sp, 1));
    }

    TrajectoryConfig tc;
    tc.n_trajectories = cfg.trajectories;
    tc.seed = cfg.seed;
    tc.rtol = cfg.traj_rtol;
    tc.atol = cfg.traj_atol;
    tc.threads = cfg.threads;
    log << "gate-sim: " << cfg.experiment << ", " << model << " model, dim "
        << sp.total_dim() << ", " << cfg.trajectories << " trajectories\n";
    const ExpectationSeries series =
        mcwf_ensemble(initial, sys, schedule, grid, obs, tc);
    require_valid(series, "gate-sim (" + model + " model)");
    validity[model] = validity_json(series.validity);
    for (std::size_t k = 0; k < series.names.size(); ++k)
      for (std::size_t i = 0; i < series.time.size(); ++i) {
        const cplx v = series.means[k][i];
        const double se =
            series.stderrs.empty() ? 0.0 : series.stderrs[k][i];
        rows.push_back({format_g17(series.time[i]), model, series.names[k],
                        format_g17(v.real()), format_g17(v.imag()),
                        format_g17(std::abs(v)), format_g17(se)});
      }
  }
  write_csv(cfg.out_dir / csv_name("gate_sim"),
            {"time", "model", "observable", "re_mean", "im_mean", "abs_mean",
             "stderr"},
            rows);
  json m = manifest_base("gate-sim", cfg);
  m["outputs"] = json{{"csv", csv_name("gate_sim")}};
  m["results"] = json{{"validity", std::move(validity)},
                      {"schedule", schedule_knots_json(schedule)}};
  write_manifest(std::move(m), cfg.out_dir / manifest_name("gate_sim"));
  return 0;
}

int cmd_validate(const ExperimentConfig& cfg_in, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  std::filesystem::create_directories(cfg.out_dir);
  const GateParams& p = cfg.params;
  GateParams oracle = p;
  std::string oracle_note;
  if (cfg.fault_injection) {
    oracle.and_theta += 1e-6;
    oracle_note = "closed-form oracle perturbed by 1e-6 (fault injection)";
    log << "validate: fault injection active, expect loud failures\n";
  }

  std::vector<CheckEntry> checks;

  {
    const SpaceDescriptor sp({10});
    const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const TripleDiff d = compare_triples(build_and(ops, p),
                                         closed_form_and(ops, oracle),
                                         {"xi1", "xi2"}, cfg.seed + 11);
    add_check(checks, log, "and gate: scattering matches the closed form",
              d.scattering, 1e-14, oracle_note);
    add_check(checks, log, "and gate: couplings match the closed form",
              d.couplings, 1e-9, oracle_note);
    add_check(checks, log, "and gate: hamiltonian matches the closed form",
              d.hamiltonian, 1e-9, oracle_note);
    add_check(checks, log,
              "and gate: compact generator matches the composed network",
              generator_distance(gate_master_equation(GateKind::And, {ops}, p),
                                 absorb_offsets(build_and(ops, p)),
                                 {"xi1", "xi2"}, cfg.seed + 12),
              1e-8);
  }
  {
    const SpaceDescriptor sp({10});
    const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const TripleDiff d =
        compare_triples(build_not(ops, p), closed_form_not(ops, p), {"xi"},
                        cfg.seed + 21);
    add_check(checks, log, "not gate: scattering matches the closed form",
              d.scattering, 1e-14);
    add_check(checks, log, "not gate: couplings match the closed form",
              d.couplings, 1e-9);
    add_check(checks, log, "not gate: hamiltonian matches the closed form",
              d.hamiltonian, 1e-9);
    add_check(checks, log,
              "not gate: compact generator matches the composed network",
              generator_distance(gate_master_equation(GateKind::Not, {ops}, p),
                                 absorb_offsets(build_not(ops, p)), {"xi"},
                                 cfg.seed + 22),
              1e-8);
  }
  {
    const SpaceDescriptor sp({6, 6});
    const CavityOps a = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const CavityOps b = fock_cavity_ops(sp, 1, p.delta, p.chi);
    const TripleDiff d = compare_triples(build_nand_latch(a, b, p),
                                         closed_form_nand_latch(a, b, p),
                                         {"set", "reset"}, cfg.seed + 31);
    add_check(checks, log, "nand latch: scattering matches the closed form",
              d.scattering, 1e-14);
    add_check(checks, log, "nand latch: couplings match the closed form",
              d.couplings, 1e-9);
    add_check(checks, log, "nand latch: hamiltonian matches the closed form",
              d.hamiltonian, 1e-9);
    add_check(
        checks, log,
        "nand latch: compact generator matches the composed network",
        generator_distance(
            gate_master_equation(GateKind::NandLatch, {a, b}, p),
            absorb_offsets(build_nand_latch(a, b, p)), {"set", "reset"},
            cfg.seed + 32),
        1e-8);
  }
  {
    const int n = 30;
    const SpaceDescriptor sp({n});
    const SlhTriple g =
        driven_cavity(fock_cavity_ops(sp, 0, p.delta, p.chi), p.kappa);
    const SteadyStateResult driven = steady_state(
        g, {{"epsilon", cplx(p.alpha, 0.0)}}, cfg.steady_residual_tol);
    const SteadyStateResult zero =
        steady_state(g, {{"epsilon", cplx(0.0, 0.0)}}, cfg.steady_residual_tol);
    const auto cd = driven.state.check();
    const auto cz = zero.state.check();
    add_check(checks, log, "steady states: trace and hermiticity defects",
              std::max({std::abs(cd.trace_defect), cd.hermiticity_defect,
                        std::abs(cz.trace_defect), cz.hermiticity_defect}),
              1e-10);
    add_check(checks, log, "steady states: negative eigenvalue excursion",
              std::max({0.0, -cd.min_eigenvalue, -cz.min_eigenvalue}), 1e-10);

    const ReductionBasis basis = build_basis(driven.state.matrix(),
                                             zero.state.matrix(), 12, p.alpha);
    add_check(checks, log, "joint diagonalizer: unitarity defect",
              basis.unitarity_defect(), 1e-10);
    const std::string basis_path =
        (cfg.out_dir / "validate_basis.txt").string();
    save_basis(basis, basis_path);
    const ReductionBasis round = load_basis(basis_path);
    const double basis_diff = std::max(
        (round.t - basis.t).cwiseAbs().maxCoeff(),
        (round.diag_weights - basis.diag_weights).cwiseAbs().maxCoeff());
    add_check(checks, log, "basis file: text round trip is exact", basis_diff,
              0.0);
  }

  bool all = true;
  json entries = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    json e{{"name", c.name},
           {"passed", c.passed},
           {"measured", c.measured},
           {"tolerance", c.tolerance}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    entries.push_back(std::move(e));
  }
  json report{{"checks", std::move(entries)}, {"all_passed", all}};
  {
    std::ofstream out(cfg.out_dir / "validate_report.json");
    if (!out)
      throw std::runtime_error("cannot open the validate report for writing");
    out << report.dump(2) << "\n";
  }
  json m = manifest_base("validate", cfg);
  m["outputs"] = json{{"report", "validate_report.json"},
                      {"scratch_basis", "validate_basis.txt"}};
  m["results"] = json{{"all_passed", all}};
  write_manifest(std::move(m), cfg.out_dir / manifest_name("validate"));
  log << (all ? "validate: all checks passed\n"
              : "validate: at least one check FAILED\n");
  return all ? 0 : 2;
}

}  // namespace kerrsim
