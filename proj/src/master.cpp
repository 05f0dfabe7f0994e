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

#include "kerrsim/master.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kerrsim/integrators.hpp"
#include "kerrsim/liouvillian.hpp"

namespace kerrsim {

namespace {

// Dimension below which eigenvalue validity checks run at every sample.
constexpr int kEigCheckDim = 512;

cplx sparse_trace_product(const SparseCd& op, const Eigen::MatrixXcd& rho) {
  cplx acc(0.0, 0.0);
  for (int k = 0; k < op.outerSize(); ++k)
    for (SparseCd::InnerIterator it(op, k); it; ++it)
      acc += it.value() * rho(it.col(), it.row());
  return acc;
}

MasterMethod resolve(MasterMethod m, int dim) {
  if (m != MasterMethod::Auto) return m;
  return dim <= 32 ? MasterMethod::Rk45Adaptive : MasterMethod::KrylovExpv;
}

}  // namespace

ExpectationSeries master_evolve(const QuantumState& initial,
                                const ParametricLindblad& system,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const MasterOptions& opts,
                                QuantumState* final_state) {
  const SpaceDescriptor& sp = system.space();
  if (initial.space() != sp)
    throw std::invalid_argument("master_evolve: initial state space mismatch");
  for (const auto& o : observables)
    if (o.op.space() != sp)
      throw std::invalid_argument("master_evolve: observable space mismatch");
  const int d = sp.total_dim();
  const MasterMethod method = resolve(opts.method, d);

  const std::vector<double> bounds = merge_boundaries(schedule, grid);
  AffineGeneratorFamily gen = driven_liouvillian(system);

  ExpectationSeries out;
  out.time = grid;
  out.names.reserve(observables.size());
  for (const auto& o : observables) out.names.push_back(o.name);
  out.means.assign(observables.size(),
                   std::vector<cplx>(grid.size(), cplx(0.0, 0.0)));

  Eigen::MatrixXcd rho = initial.as_density();
  std::vector<cplx> scratch;

  auto sample = [&](double t, std::size_t grid_index) {
    QuantumState::Validity v{};
    v.trace_defect = std::abs(rho.trace() - cplx(1.0, 0.0));
    v.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (opts.check_validity && d <= kEigCheckDim) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          rho, Eigen::EigenvaluesOnly);
      v.min_eigenvalue = es.eigenvalues().minCoeff();
    } else {
      v.min_eigenvalue = 0.0;
    }
    if (opts.check_validity) out.validity.absorb(v);
    rho /= rho.trace().real();

    if (!observables.empty()) {
      const auto drives = schedule.drives_at(t);
      for (std::size_t j = 0; j < observables.size(); ++j) {
        out.means[j][grid_index] =
            sparse_trace_product(observables[j].op.matrix(), rho) +
            observables[j].offset.evaluate(drives);
      }
    }
  };

  auto advance_rk45 = [&](double a, double b) {
    Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(
        rho.data(), static_cast<Eigen::Index>(d) * d);
    DerivFn f = [&](double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
      gen.apply(schedule.drives_at(t), v, dv, scratch);
    };
    Rk45Options ro;
    ro.rtol = opts.rtol;
    ro.atol = opts.atol;
    rk45_integrate(f, a, b, y, ro);
    rho = Eigen::Map<const Eigen::MatrixXcd>(y.data(), d, d);
  };

  auto advance_krylov = [&](double a, double b) {
    Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(
        rho.data(), static_cast<Eigen::Index>(d) * d);
    const int slices =
        schedule.constant_on(a, b)
            ? 1
            : std::max(1, static_cast<int>(std::ceil(
                              opts.ramp_substeps * (b - a) /
                              std::max(schedule.ramp_duration(), b - a))));
    KrylovOptions ko;
    ko.m = opts.krylov_m;
    ko.tol = opts.rtol;
    for (int s = 0; s < slices; ++s) {
      const double ta = a + (b - a) * s / slices;
      const double tb = a + (b - a) * (s + 1) / slices;
      const auto drives = schedule.drives_at(0.5 * (ta + tb));
      auto apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& yy) {
        gen.apply(drives, x, yy, scratch);
      };
      y = krylov_expv(apply, tb - ta, y, gen.norm_bound(drives), ko);
    }
    rho = Eigen::Map<const Eigen::MatrixXcd>(y.data(), d, d);
  };

  sample(grid[0], 0);
  std::size_t gi = 1;
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const double t0 = bounds[b];
    const double t1 = bounds[b + 1];
    if (t1 <= grid[0]) continue;
    if (method == MasterMethod::Rk45Adaptive)
      advance_rk45(t0, t1);
    else
      advance_krylov(t0, t1);
    if (gi < grid.size() && t1 == grid[gi]) {
      sample(t1, gi);
      ++gi;
    }
  }
  if (gi != grid.size())
    throw std::logic_error("master_evolve: sample grid not exhausted");

  if (final_state != nullptr) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    Eigen::VectorXd vals = es.eigenvalues();
    const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (vals[i] < -100.0 * opts.rtol * scale)
        throw std::runtime_error(
            "master_evolve: final state strongly non-positive");
      if (vals[i] < 0.0) vals[i] = 0.0;
    }
    Eigen::MatrixXcd cleaned =
        es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
    cleaned /= cleaned.trace().real();
    *final_state = QuantumState::density(sp, std::move(cleaned));
  }
  return out;
}

ExpectationSeries master_evolve(const QuantumState& initial,
                                const SlhTriple& network,
                                const DriveSchedule& schedule,
                                const std::vector<double>& grid,
                                const std::vector<Observable>& observables,
                                const MasterOptions& opts,
                                QuantumState* final_state) {
  return master_evolve(initial, absorb_offsets(network), schedule, grid,
                       observables, opts, final_state);
}

}  // namespace kerrsim
