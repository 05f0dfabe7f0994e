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

#include "kerrsim/mcwf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kerrsim/integrators.hpp"
#include "kerrsim/liouvillian.hpp"

namespace kerrsim {

namespace {

TrajectoryMethod resolve(TrajectoryMethod m, int dim) {
  if (m != TrajectoryMethod::Auto) return m;
  return dim <= 64 ? TrajectoryMethod::Rk45Adaptive
                   : TrajectoryMethod::KrylovExpv;
}

// One trajectory's working data.
struct TrajectoryWorker {
  const AffineGeneratorFamily& gen;
  const std::vector<SparseCd>& collapse;
  const DriveSchedule& schedule;
  const std::vector<double>& bounds;
  const std::vector<double>& grid;
  const std::vector<Observable>& observables;
  const TrajectoryConfig& cfg;
  TrajectoryMethod method;

  std::mt19937_64 rng;
  std::uniform_real_distribution<double> uni{0.0, 1.0};
  double threshold = 1.0;
  std::vector<cplx> scratch;

  double draw_threshold() {
    double r = uni(rng);
    while (r <= 0.0) r = uni(rng);
    return r;
  }

  // Applies a collapse drawn according to the channel weights at psi.
  void apply_jump(Eigen::VectorXcd& psi) {
    std::vector<double> w(collapse.size());
    double total = 0.0;
    for (std::size_t j = 0; j < collapse.size(); ++j) {
      w[j] = (collapse[j] * psi).squaredNorm();
      total += w[j];
    }
    if (!(total > 0.0))
      throw std::runtime_error("mcwf: collapse triggered without dissipation");
    const double u = uni(rng) * total;
    double acc = 0.0;
    std::size_t pick = collapse.size() - 1;
    for (std::size_t j = 0; j < collapse.size(); ++j) {
      acc += w[j];
      if (u <= acc) {
        pick = j;
        break;
      }
    }
    psi = collapse[pick] * psi;
    psi /= psi.norm();
    threshold = draw_threshold();
  }

  // Advances psi over [a, b] with adaptive steps; fires collapses when the
  // squared norm reaches the threshold.  The crossing is bracketed by one
  // accepted step and located by bisection, re-integrating from the step
  // start (the squared norm decreases monotonically along the flow).
  void advance_rk45(double a, double b, Eigen::VectorXcd& psi) {
    DerivFn f = [&](double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
      gen.apply(schedule.drives_at(t), v, dv, scratch);
    };
    Rk45Options ro;
    ro.rtol = cfg.rtol;
    ro.atol = cfg.atol;
    Rk45Stepper stepper(f, ro);
    Eigen::VectorXcd before(psi.size());
    double t = a;
    const double eps = 1e-12 * std::max(1.0, std::abs(b));
    while (b - t > eps) {
      before = psi;
      const double h = stepper.step(t, b, psi);
      if (psi.squaredNorm() > threshold) {
        t += h;
        continue;
      }
      double lo = 0.0, hi = h;
      Eigen::VectorXcd below = psi;
      for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        Eigen::VectorXcd probe = before;
        rk45_integrate(f, t, t + mid, probe, ro);
        if (probe.squaredNorm() <= threshold) {
          hi = mid;
          below = std::move(probe);
        } else {
          lo = mid;
        }
      }
      psi = below;
      apply_jump(psi);
      t += hi;
      stepper.reset();
    }
  }

  void advance_krylov(double a, double b, Eigen::VectorXcd& psi) {
    const int slices =
        schedule.constant_on(a, b)
            ? 1
            : std::max(1, static_cast<int>(std::ceil(
                              cfg.ramp_substeps * (b - a) /
                              std::max(schedule.ramp_duration(), b - a))));
    KrylovOptions ko;
    ko.m = cfg.krylov_m;
    ko.tol = cfg.rtol;
    for (int s = 0; s < slices; ++s) {
      const double ta = a + (b - a) * s / slices;
      const double tb = a + (b - a) * (s + 1) / slices;
      const auto drives = schedule.drives_at(0.5 * (ta + tb));
      auto apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        gen.apply(drives, x, y, scratch);
      };
      KrylovStepper stepper(apply, psi.size(), gen.norm_bound(drives), ko);
      double t = ta;
      const double eps = 1e-12 * std::max(1.0, std::abs(tb));
      while (tb - t > eps) {
        const double tau = stepper.build(psi, tb - t);
        Eigen::VectorXcd cand = stepper.eval(tau);
        if (cand.squaredNorm() > threshold) {
          psi = std::move(cand);
          t += tau;
          continue;
        }
        // One factorization covers the whole step, so the crossing is
        // located by re-evaluating the small exponential.
        double lo = 0.0, hi = tau;
        Eigen::VectorXcd below = std::move(cand);
        for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
          const double mid = 0.5 * (lo + hi);
          Eigen::VectorXcd probe = stepper.eval(mid);
          if (probe.squaredNorm() <= threshold) {
            hi = mid;
            below = std::move(probe);
          } else {
            lo = mid;
          }
        }
        psi = below;
        apply_jump(psi);
        t += hi;
      }
    }
  }

  // Runs one trajectory, writing <obs>(t_k) into means[obs * n_grid + k].
  void run(const Eigen::VectorXcd& initial, std::vector<cplx>& means) {
    Eigen::VectorXcd psi = initial;
    psi /= psi.norm();
    threshold = draw_threshold();

    const std::size_t n_grid = grid.size();
    auto sample = [&](double t, std::size_t k) {
      const double nrm2 = psi.squaredNorm();
      const auto drives = schedule.drives_at(t);
      for (std::size_t j = 0; j < observables.size(); ++j) {
        means[j * n_grid + k] =
            psi.dot(observables[j].op.matrix() * psi) / nrm2 +
            observables[j].offset.evaluate(drives);
      }
    };

    sample(grid[0], 0);
    std::size_t gi = 1;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
      if (method == TrajectoryMethod::Rk45Adaptive)
        advance_rk45(bounds[b], bounds[b + 1], psi);
      else
        advance_krylov(bounds[b], bounds[b + 1], psi);
      if (gi < grid.size() && bounds[b + 1] == grid[gi]) {
        sample(bounds[b + 1], gi);
        ++gi;
      }
    }
    if (gi != grid.size())
      throw std::logic_error("mcwf: sample grid not exhausted");
  }
};

}  // namespace

ExpectationSeries mcwf_ensemble(const QuantumState& initial,
                                const ParametricLindblad& system,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const TrajectoryConfig& cfg) {
  const SpaceDescriptor& sp = system.space();
  if (initial.kind() != QuantumState::Kind::Pure)
    throw std::invalid_argument("mcwf_ensemble: initial state must be pure");
  if (initial.space() != sp)
    throw std::invalid_argument("mcwf_ensemble: initial state space mismatch");
  for (const auto& o : observables)
    if (o.op.space() != sp)
      throw std::invalid_argument("mcwf_ensemble: observable space mismatch");
  if (cfg.n_trajectories < 1)
    throw std::invalid_argument("mcwf_ensemble: need at least one trajectory");

  const int d = sp.total_dim();
  const TrajectoryMethod method = resolve(cfg.method, d);
  const std::vector<double> bounds = merge_boundaries(schedule, grid);

  AffineGeneratorFamily gen = driven_effective_generator(system);
  std::vector<SparseCd> collapse;
  collapse.reserve(system.collapse.size());
  for (const auto& l : system.collapse) collapse.push_back(l.matrix());

  const std::size_t n_traj = static_cast<std::size_t>(cfg.n_trajectories);
  const std::size_t n_grid = grid.size();
  const std::size_t n_obs = observables.size();
  std::vector<std::vector<cplx>> per_traj(n_traj);

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_threads = std::min<unsigned>(
      cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw,
      static_cast<unsigned>(n_traj));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n_threads);
  auto work = [&](unsigned tid) {
    try {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= n_traj) break;
        TrajectoryWorker w{gen,    collapse, schedule, bounds, grid,
                           observables, cfg, method,   {},     {},
                           1.0,    {}};
        std::seed_seq seq{static_cast<unsigned>(cfg.seed & 0xffffffffu),
                          static_cast<unsigned>(cfg.seed >> 32),
                          static_cast<unsigned>(k)};
        w.rng.seed(seq);
        per_traj[k].assign(n_obs * n_grid, cplx(0.0, 0.0));
        w.run(initial.vector(), per_traj[k]);
      }
    } catch (...) {
      errors[tid] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned tid = 0; tid < n_threads; ++tid) pool.emplace_back(work, tid);
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ExpectationSeries out;
  out.time = grid;
  out.names.reserve(n_obs);
  for (const auto& o : observables) out.names.push_back(o.name);
  out.means.assign(n_obs, std::vector<cplx>(n_grid, cplx(0.0, 0.0)));
  out.stderrs.assign(n_obs, std::vector<double>(n_grid, 0.0));

  // Deterministic reduction in trajectory order.
  for (std::size_t j = 0; j < n_obs; ++j) {
    for (std::size_t k = 0; k < n_grid; ++k) {
      cplx mean(0.0, 0.0);
      for (std::size_t t = 0; t < n_traj; ++t)
        mean += per_traj[t][j * n_grid + k];
      mean /= static_cast<double>(n_traj);
      out.means[j][k] = mean;
      if (n_traj > 1) {
        double var = 0.0;
        for (std::size_t t = 0; t < n_traj; ++t) {
          const cplx dev = per_traj[t][j * n_grid + k] - mean;
          var += dev.real() * dev.real() + dev.imag() * dev.imag();
        }
        var /= static_cast<double>(n_traj - 1);
        out.stderrs[j][k] = std::sqrt(var / static_cast<double>(n_traj));
      }
    }
  }
  out.validity.checked_states =
      static_cast<int>(n_traj * n_grid);
  return out;
}

ExpectationSeries mcwf_ensemble(const QuantumState& initial,
                                const SlhTriple& network,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const TrajectoryConfig& cfg) {
  return mcwf_ensemble(initial, absorb_offsets(network), schedule, grid,
                       observables, cfg);
}

}  // namespace kerrsim
