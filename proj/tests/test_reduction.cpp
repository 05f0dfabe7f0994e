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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "doctest.h"
#include "kerrsim/components.hpp"
#include "kerrsim/fidelity.hpp"
#include "kerrsim/jade.hpp"
#include "kerrsim/reduction.hpp"
#include "kerrsim/steady_state.hpp"

using namespace kerrsim;

namespace {

const cplx kI(0.0, 1.0);

Eigen::MatrixXcd random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (x + x.adjoint());
}

Eigen::MatrixXcd random_density(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = cplx(g(rng), g(rng));
  Eigen::MatrixXcd rho = x * x.adjoint();
  rho /= rho.trace();
  return rho;
}

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

double unitarity_defect(const Eigen::MatrixXcd& t) {
  const Eigen::Index n = t.rows();
  return (t.adjoint() * t - Eigen::MatrixXcd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

double total_off(const std::vector<Eigen::MatrixXcd>& ms,
                 const Eigen::MatrixXcd& t) {
  double sum = 0.0;
  for (const auto& m : ms) sum += off_diagonal_energy(t.adjoint() * m * t);
  return sum;
}

// Two-port Kerr cavity driven through the first input.
SlhTriple driven_cavity(const SpaceDescriptor& sp, double kappa, double delta,
                        double chi) {
  SlhTriple cav = kerr_cavity(sp, 0, kappa, delta, chi);
  SlhTriple drives = concat(displacement(sp, DriveExpr::parameter("e1")),
                            identity_system(sp, 1));
  return series(cav, drives);
}

Eigen::MatrixXcd kerr_steady(const SpaceDescriptor& sp, double kappa,
                             double delta, double chi, double eps) {
  SlhTriple g = driven_cavity(sp, kappa, delta, chi);
  return steady_state(g, {{"e1", cplx(eps, 0.0)}}).state.matrix();
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("off-diagonal energy sums squared magnitudes off the diagonal") {
  Eigen::MatrixXcd a(3, 3);
  a << 1.0, cplx(0.0, 2.0), 0.0,  //
      cplx(0.0, -2.0), 5.0, 3.0,  //
      0.0, 3.0, -4.0;
  CHECK(off_diagonal_energy(a) == doctest::Approx(4.0 + 4.0 + 9.0 + 9.0));
  CHECK(off_diagonal_energy(Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
}

TEST_CASE("jade rejects bad inputs") {
  Eigen::MatrixXcd h = random_hermitian(4, 11);
  CHECK_THROWS_AS(jade({h}), std::invalid_argument);
  CHECK_THROWS_AS(jade({h, random_hermitian(5, 12)}), std::invalid_argument);

  Eigen::MatrixXcd skew = h;
  skew(0, 1) += cplx(0.0, 1.0);
  CHECK_THROWS_AS(jade({h, skew}), std::invalid_argument);
}

TEST_CASE("jade on a repeated matrix reproduces its eigendecomposition") {
  const int n = 8;
  Eigen::MatrixXcd h = random_hermitian(n, 21);
  JadeOptions opt;
  opt.tol = 1e-14;
  JadeResult r = jade({h, h}, opt);

  CHECK(r.converged);
  CHECK(unitarity_defect(r.t) < 1e-12);

  Eigen::MatrixXcd d = r.t.adjoint() * h * r.t;
  CHECK(off_diagonal_energy(d) < 1e-20 * h.squaredNorm());

  // The diagonal must carry the eigenvalues, in some order.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd got = d.diagonal().real();
  std::sort(got.data(), got.data() + n);
  CHECK((got - es.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("already-diagonal inputs need no rotation") {
  Eigen::MatrixXcd d1 = Eigen::Vector3cd(0.5, 0.3, 0.2).asDiagonal();
  Eigen::MatrixXcd d2 = Eigen::Vector3cd(1.0, -2.0, 0.1).asDiagonal();
  JadeResult r = jade({d1, d2});
  CHECK(r.converged);
  CHECK(r.sweeps == 1);
  CHECK((r.t - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  for (double off : r.off_history) CHECK(off == 0.0);
}

TEST_CASE("commuting pairs are diagonalized exactly") {
  const int n = 12;
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    Eigen::MatrixXcd v = random_unitary(n, seed);
    std::mt19937_64 rng(seed + 100);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Eigen::VectorXd d1(n), d2(n);
    for (int i = 0; i < n; ++i) {
      d1[i] = u(rng);
      d2[i] = u(rng);
    }
    Eigen::MatrixXcd a = v * d1.asDiagonal() * v.adjoint();
    Eigen::MatrixXcd b = v * d2.asDiagonal() * v.adjoint();
    a = 0.5 * (a + a.adjoint());
    b = 0.5 * (b + b.adjoint());

    JadeOptions opt;
    opt.tol = 1e-14;
    JadeResult r = jade({a, b}, opt);

    CHECK(r.converged);
    CHECK(unitarity_defect(r.t) < 1e-10);
    const double scale = a.squaredNorm() + b.squaredNorm();
    CHECK(total_off({a, b}, r.t) < 1e-18 * scale);
  }
}

TEST_CASE("off energy decreases monotonically and t stays unitary") {
  // Three independent dense matrices are far from jointly diagonalizable;
  // the sweeps may creep along a flat valley without reaching the rotation
  // threshold, so only monotonicity and unitarity are guaranteed here.
  const int n = 10;
  std::vector<Eigen::MatrixXcd> ms = {random_hermitian(n, 41),
                                      random_hermitian(n, 42),
                                      random_hermitian(n, 43)};
  JadeResult r = jade(ms);

  CHECK(unitarity_defect(r.t) < 1e-10);
  REQUIRE(r.off_history.size() == static_cast<std::size_t>(r.sweeps) + 1);
  double scale = 0.0;
  for (const auto& m : ms) scale += m.squaredNorm();
  for (std::size_t k = 1; k < r.off_history.size(); ++k) {
    CHECK(r.off_history[k] <= r.off_history[k - 1] + 1e-14 * scale);
  }
  // The history must agree with recomputing off from the returned unitary.
  CHECK(total_off(ms, r.t) ==
        doctest::Approx(r.off_history.back()).epsilon(1e-9));
}

TEST_CASE("driven and undriven cavity steady states do not commute") {
  const int n = 75;
  SpaceDescriptor sp({n});
  const double kappa = 25.0, delta = 50.0, chi = -50.0 / 60.0;
  const double alpha = 22.6274;

  Eigen::MatrixXcd rho_a = kerr_steady(sp, kappa, delta, chi, alpha);
  Eigen::MatrixXcd rho_0 = kerr_steady(sp, kappa, delta, chi, 0.0);

  // The undriven cavity relaxes to the vacuum projector.
  CHECK(std::abs(rho_0(0, 0) - 1.0) < 1e-8);

  Eigen::MatrixXcd comm = rho_a * rho_0 - rho_0 * rho_a;
  CHECK(comm.cwiseAbs().maxCoeff() > 1e-6);

  JadeResult r = jade({rho_a, rho_0});
  CHECK(r.converged);
  CHECK(unitarity_defect(r.t) < 1e-10);
  const double scale = rho_a.squaredNorm() + rho_0.squaredNorm();
  for (std::size_t k = 1; k < r.off_history.size(); ++k) {
    CHECK(r.off_history[k] <= r.off_history[k - 1] + 1e-14 * scale);
  }
  // Non-commuting inputs leave a genuine residual.
  CHECK(r.off_history.back() > 1e-18 * scale);
}

TEST_CASE("basis ordering retains the largest weights in the last columns") {
  Eigen::MatrixXcd rho = Eigen::Vector3cd(0.5, 0.3, 0.2).asDiagonal();
  ReductionBasis basis = build_basis(rho, rho, 2, 0.0);

  CHECK(basis.d == 2);
  CHECK(basis.block == BasisBlock::LastColumns);
  CHECK(basis.unitarity_defect() < 1e-12);

  // Weights ascend and sum to tr(rho_drive) + tr(rho_zero).
  REQUIRE(basis.diag_weights.size() == 3);
  CHECK(std::is_sorted(basis.diag_weights.data(), basis.diag_weights.data() + 3));
  CHECK(basis.diag_weights.sum() == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(basis.diag_weights[0] == doctest::Approx(0.4));
  CHECK(basis.diag_weights[2] == doctest::Approx(1.0));

  // The retained columns span the two heaviest Fock axes, e0 and e1.
  Eigen::MatrixXcd kept = basis.t.rightCols(2);
  Eigen::MatrixXcd gram = kept.adjoint() * kept;
  CHECK((gram - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(std::abs(kept.row(2).norm()) < 1e-12);
}

TEST_CASE("reduce_operator projects through the basis") {
  const int n = 6, d = 3;
  Eigen::MatrixXcd rho1 = random_density(n, 51);
  Eigen::MatrixXcd rho2 = random_density(n, 52);
  ReductionBasis basis = build_basis(rho1, rho2, d, 1.0);

  CHECK(reduce_operator(Eigen::MatrixXcd::Identity(n, n), basis)
            .isApprox(Eigen::MatrixXcd::Identity(d, d), 1e-12));

  Eigen::MatrixXcd x = random_hermitian(n, 53);
  Eigen::MatrixXcd y = random_hermitian(n, 54);
  Eigen::MatrixXcd lin = reduce_operator(2.0 * x - kI * y, basis);
  Eigen::MatrixXcd lin2 =
      2.0 * reduce_operator(x, basis) - kI * reduce_operator(y, basis);
  CHECK((lin - lin2).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXcd xd = reduce_operator(x, basis).adjoint();
  CHECK((xd - reduce_operator(x.adjoint(), basis)).cwiseAbs().maxCoeff() <
        1e-12);

  // Explicit form: the bottom-right block of T^* X T.
  Eigen::MatrixXcd full = basis.t.adjoint() * x * basis.t;
  CHECK((reduce_operator(x, basis) - full.bottomRightCorner(d, d))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("fock truncation basis keeps the first levels") {
  ReductionBasis fb = fock_truncation_basis(4, 2);
  CHECK(fb.block == BasisBlock::FirstColumns);
  CHECK(fb.unitarity_defect() == 0.0);

  SpaceDescriptor sp({4});
  Eigen::MatrixXcd a = annihilation(sp, 0).dense();
  Eigen::MatrixXcd ar = reduce_operator(a, fb);
  Eigen::MatrixXcd want(2, 2);
  want << 0.0, 1.0, 0.0, 0.0;
  CHECK((ar - want).cwiseAbs().maxCoeff() == 0.0);

  ReductionBasis full = fock_truncation_basis(3, 3);
  Eigen::MatrixXcd h = random_hermitian(3, 55);
  CHECK((reduce_operator(h, full) - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embedding is trace preserving and inverts reduction at full rank") {
  const int n = 7;
  Eigen::MatrixXcd rho1 = random_density(n, 61);
  Eigen::MatrixXcd rho2 = random_density(n, 62);

  ReductionBasis basis = build_basis(rho1, rho2, 4, 2.0);
  Eigen::MatrixXcd small = random_density(4, 63);
  Eigen::MatrixXcd big = embed_state(small, basis);
  CHECK(std::abs(big.trace() - 1.0) < 1e-12);
  CHECK((big - big.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  // A full basis (d = n) makes reduce followed by embed the identity map.
  ReductionBasis full = build_basis(rho1, rho2, n, 2.0);
  Eigen::MatrixXcd rho = random_density(n, 64);
  Eigen::MatrixXcd round = embed_state(reduce_operator(rho, full), full);
  CHECK((round - rho).cwiseAbs().maxCoeff() < 1e-10);

  // Fock-block convention round trip.
  ReductionBasis fb = fock_truncation_basis(n, 3);
  Eigen::MatrixXcd rf = random_density(3, 65);
  Eigen::MatrixXcd bf = embed_state(rf, fb);
  CHECK(bf.topLeftCorner(3, 3).isApprox(rf, 1e-14));
  CHECK(bf.bottomRightCorner(4, 4).cwiseAbs().maxCoeff() == 0.0);
  CHECK(state_fidelity(QuantumState::density(SpaceDescriptor({n}), bf),
                       QuantumState::density(SpaceDescriptor({n}), bf)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reduced cavity at full dimension recovers the exact model") {
  const int n = 12;
  SpaceDescriptor sp({n});
  const double kappa = 25.0, delta = 50.0, chi = -50.0 / 60.0;

  ReductionBasis fb = fock_truncation_basis(n, n);
  CavityOps red = reduced_cavity_ops(fb, sp, 0, delta, chi);
  CavityOps exact = fock_cavity_ops(sp, 0, delta, chi);
  CHECK(red.lower.max_abs_distance(exact.lower) < 1e-12);
  CHECK(red.h0.max_abs_distance(exact.h0) < 1e-12);

  SlhTriple via_red = kerr_cavity(sp, red, kappa);
  SlhTriple direct = kerr_cavity(sp, 0, kappa, delta, chi);
  CHECK((via_red.S - direct.S).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 0; j < 2; ++j) {
    CHECK(via_red.L[j].constant_part().max_abs_distance(
              direct.L[j].constant_part()) < 1e-12);
  }
  CHECK(via_red.H.constant_part().max_abs_distance(direct.H.constant_part()) <
        1e-12);
}

TEST_CASE("reduced model tracks the full steady-state output off threshold") {
  const int n = 40, d = 10;
  SpaceDescriptor sp({n});
  const double kappa = 25.0, delta = 50.0, chi = -50.0 / 60.0;
  const double lambda = 10.0;

  Eigen::MatrixXcd rho_l = kerr_steady(sp, kappa, delta, chi, lambda);
  Eigen::MatrixXcd rho_0 = kerr_steady(sp, kappa, delta, chi, 0.0);
  ReductionBasis basis = build_basis(rho_l, rho_0, d, lambda);

  SpaceDescriptor rsp({d});
  CavityOps ops = reduced_cavity_ops(basis, rsp, 0, delta, chi);
  SlhTriple red = series(kerr_cavity(rsp, ops, kappa),
                         concat(displacement(rsp, DriveExpr::parameter("e1")),
                                identity_system(rsp, 1)));
  SlhTriple full = driven_cavity(sp, kappa, delta, chi);

  for (double eps : {4.0, 10.0}) {
    std::map<std::string, cplx> drives = {{"e1", cplx(eps, 0.0)}};
    QuantumState rho_r = steady_state(red, drives).state;
    QuantumState rho_f = steady_state(full, drives).state;
    // Transmitted output field, channel 2.
    cplx out_r = output_mean(red, rho_r, drives, 2);
    cplx out_f = output_mean(full, rho_f, drives, 2);
    CHECK(std::abs(out_r - out_f) < 0.01 * std::abs(out_f));
  }
}

TEST_CASE("reduced vacuum is the normalized projected vacuum") {
  ReductionBasis fb = fock_truncation_basis(6, 3);
  QuantumState v = reduced_vacuum(fb);
  CHECK(v.kind() == QuantumState::Kind::Pure);
  CHECK(std::abs(v.vector()[0] - 1.0) < 1e-14);
  CHECK(v.vector().tail(2).norm() == 0.0);

  // Permutation basis: vacuum lands on whichever retained column equals e0.
  Eigen::MatrixXcd rho = Eigen::Vector3cd(0.5, 0.3, 0.2).asDiagonal();
  ReductionBasis basis = build_basis(rho, rho, 2, 0.0);
  QuantumState w = reduced_vacuum(basis);
  Eigen::VectorXcd embedded =
      basis.t.rightCols(2) * w.vector();
  CHECK(std::abs(std::abs(embedded[0]) - 1.0) < 1e-12);
}

TEST_CASE("basis files round trip") {
  const int n = 9;
  ReductionBasis basis =
      build_basis(random_density(n, 71), random_density(n, 72), 5, 22.6274);
  basis.manifest_hash = 0xdeadbeefcafef00dULL;

  const std::string path = "test_basis_roundtrip.tmp";
  save_basis(basis, path);
  ReductionBasis loaded = load_basis(path);
  std::remove(path.c_str());

  CHECK(loaded.full_dim() == n);
  CHECK(loaded.d == 5);
  CHECK(loaded.lambda == basis.lambda);
  CHECK(loaded.block == BasisBlock::LastColumns);
  CHECK(loaded.manifest_hash == basis.manifest_hash);
  CHECK((loaded.t - basis.t).cwiseAbs().maxCoeff() == 0.0);
  CHECK((loaded.diag_weights - basis.diag_weights).cwiseAbs().maxCoeff() ==
        0.0);
}

}  // TEST_SUITE
