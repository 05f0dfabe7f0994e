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

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "kerrsim/components.hpp"
#include "kerrsim/gates.hpp"
#include "kerrsim/reduction.hpp"
#include "kerrsim/steady_state.hpp"

using namespace kerrsim;

namespace {

const cplx kI(0.0, 1.0);

std::map<std::string, cplx> random_drives(const std::vector<std::string>& names,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  std::map<std::string, cplx> out;
  for (const auto& n : names) out[n] = cplx(u(rng), u(rng));
  return out;
}

// Composed and closed-form triples must agree channel by channel: scattering
// entries to machine precision, couplings and Hamiltonian to 1e-9 after
// evaluation at random drive amplitudes.  The Hamiltonians are compared
// modulo an identity multiple, the only slack the algebra allows (a c-number
// energy offset never moves any state).
void check_triples_match(const SlhTriple& composed, const SlhTriple& closed,
                         const std::vector<std::string>& drive_names,
                         std::uint64_t seed) {
  REQUIRE(composed.channels() == closed.channels());
  REQUIRE(composed.space == closed.space);
  CHECK((composed.S - closed.S).cwiseAbs().maxCoeff() <= 1e-14);

  std::mt19937_64 rng(seed);
  const int dim = composed.space.total_dim();
  for (int trial = 0; trial < 10; ++trial) {
    const auto drives = random_drives(drive_names, rng);
    const EvaluatedSlh a = evaluate(composed, drives);
    const EvaluatedSlh b = evaluate(closed, drives);
    for (int k = 0; k < composed.channels(); ++k)
      CHECK(a.L[static_cast<std::size_t>(k)].max_abs_distance(
                b.L[static_cast<std::size_t>(k)]) <= 1e-9);
    Eigen::MatrixXcd dh = a.H.dense() - b.H.dense();
    dh -= (dh.trace() / static_cast<double>(dim)) *
          Eigen::MatrixXcd::Identity(dim, dim);
    CHECK(dh.cwiseAbs().maxCoeff() <= 1e-9);
  }
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

ReductionBasis rotated_basis(int n, int d, std::uint64_t seed) {
  ReductionBasis b;
  b.t = random_unitary(n, seed);
  b.d = d;
  b.lambda = 1.0;
  b.diag_weights = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  b.block = BasisBlock::LastColumns;
  return b;
}

// Right-hand side of the Lindblad master equation for a bound generator.
Eigen::MatrixXcd lindblad_action(const LindbladForm& form,
                                 const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd h = form.H.dense();
  Eigen::MatrixXcd out = -kI * (h * rho - rho * h);
  for (const auto& c : form.collapse) {
    const Eigen::MatrixXcd l = c.dense();
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

void check_same_generator(const ParametricLindblad& full,
                          const ParametricLindblad& compact,
                          const std::vector<std::string>& drive_names,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int dim = full.space().total_dim();
  for (int trial = 0; trial < 3; ++trial) {
    const auto drives = random_drives(drive_names, rng);
    const LindbladForm a = full.evaluate(drives);
    const LindbladForm b = compact.evaluate(drives);
    for (int rep = 0; rep < 3; ++rep) {
      const Eigen::MatrixXcd rho =
          random_density(dim, seed + 17 * static_cast<std::uint64_t>(rep) + 1);
      const Eigen::MatrixXcd da = lindblad_action(a, rho);
      const Eigen::MatrixXcd db = lindblad_action(b, rho);
      const double scale = std::max(1.0, da.cwiseAbs().maxCoeff());
      CHECK((da - db).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    }
  }
}

}  // namespace

TEST_SUITE("gates") {

TEST_CASE("closed-form scattering matrices are unitary with the stated entries") {
  const GateParams p;
  const SpaceDescriptor sp({6});
  const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
  const double r = 1.0 / std::sqrt(2.0);

  SUBCASE("and") {
    const SlhTriple g = closed_form_and(ops, p);
    REQUIRE(g.channels() == 3);
    CHECK(g.scattering_unitarity_defect() <= 1e-10);
    const double ct = std::cos(p.and_theta), st = std::sin(p.and_theta);
    const cplx ph = std::exp(cplx(0.0, p.and_phi));
    CHECK(std::abs(g.S(0, 0) - cplx(r)) <= 1e-15);
    CHECK(std::abs(g.S(0, 1) + cplx(r)) <= 1e-15);
    CHECK(std::abs(g.S(0, 2)) == 0.0);
    CHECK(std::abs(g.S(1, 0) - r * ct * ph) <= 1e-15);
    CHECK(std::abs(g.S(1, 2) + st) <= 1e-15);
    CHECK(std::abs(g.S(2, 0) - r * st * ph) <= 1e-15);
    CHECK(std::abs(g.S(2, 2) - ct) <= 1e-15);
  }

  SUBCASE("not") {
    const SlhTriple g = closed_form_not(ops, p);
    REQUIRE(g.channels() == 5);
    CHECK(g.scattering_unitarity_defect() <= 1e-10);
    const double ct = std::cos(p.not_theta), st = std::sin(p.not_theta);
    const double cp = std::cos(p.not_theta_p), sp2 = std::sin(p.not_theta_p);
    const cplx ph = std::exp(cplx(0.0, p.not_phi_p));
    CHECK(std::abs(g.S(0, 0) - 0.5 * (-1.0 - ph * sp2)) <= 1e-15);
    CHECK(std::abs(g.S(0, 1) - 0.5 * (1.0 - ph * sp2)) <= 1e-15);
    CHECK(std::abs(g.S(0, 2) - r * cp * ph) <= 1e-15);
    CHECK(std::abs(g.S(2, 0) - r * cp) <= 1e-15);
    CHECK(std::abs(g.S(2, 2) - sp2) <= 1e-15);
    CHECK(std::abs(g.S(3, 3) - ct) <= 1e-15);
    CHECK(std::abs(g.S(3, 4) + st) <= 1e-15);
    CHECK(std::abs(g.S(4, 3) - st) <= 1e-15);
    CHECK(g.S.block(0, 3, 3, 2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.S.block(3, 0, 2, 3).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("latch") {
    const SpaceDescriptor sp2({4, 4});
    const CavityOps a = fock_cavity_ops(sp2, 0, p.delta, p.chi);
    const CavityOps b = fock_cavity_ops(sp2, 1, p.delta, p.chi);
    const SlhTriple g = closed_form_nand_latch(a, b, p);
    REQUIRE(g.channels() == 6);
    CHECK(g.scattering_unitarity_defect() <= 1e-10);
    // S is two identical copies of one 3x3 block.
    CHECK((g.S.block(0, 0, 3, 3) - g.S.block(3, 3, 3, 3))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(g.S.block(0, 3, 3, 3).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.S.block(3, 0, 3, 3).cwiseAbs().maxCoeff() == 0.0);
    const double ct = std::cos(p.latch_theta), st = std::sin(p.latch_theta);
    const cplx ph = std::exp(cplx(0.0, p.latch_phi));
    CHECK(std::abs(g.S(0, 0) - cplx(r)) <= 1e-15);
    CHECK(std::abs(g.S(0, 1) + r * ct * ph) <= 1e-15);
    CHECK(std::abs(g.S(0, 2) - r * st * ph) <= 1e-15);
    CHECK(std::abs(g.S(1, 1) - r * ct * ph) <= 1e-15);
    CHECK(std::abs(g.S(2, 0)) == 0.0);
    CHECK(std::abs(g.S(2, 1) - st) <= 1e-15);
    CHECK(std::abs(g.S(2, 2) - ct) <= 1e-15);
  }
}

TEST_CASE("composed gates equal the closed forms on the number-state cavity") {
  const GateParams p;

  SUBCASE("and") {
    const SpaceDescriptor sp({10});
    const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
    check_triples_match(build_and(ops, p), closed_form_and(ops, p),
                        {"xi1", "xi2"}, 101);
  }
  SUBCASE("not") {
    const SpaceDescriptor sp({10});
    const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
    check_triples_match(build_not(ops, p), closed_form_not(ops, p), {"xi"},
                        102);
  }
  SUBCASE("latch") {
    const SpaceDescriptor sp({6, 6});
    const CavityOps a = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const CavityOps b = fock_cavity_ops(sp, 1, p.delta, p.chi);
    check_triples_match(build_nand_latch(a, b, p),
                        closed_form_nand_latch(a, b, p), {"set", "reset"},
                        103);
  }
}

TEST_CASE("zero drives collapse the AND Hamiltonian to the bare cavity") {
  const GateParams p;
  const SpaceDescriptor sp({8});
  const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
  const std::map<std::string, cplx> off = {{"xi1", 0.0}, {"xi2", 0.0}};
  CHECK(evaluate(build_and(ops, p), off).H.max_abs_distance(ops.h0) <= 1e-12);
  CHECK(evaluate(closed_form_and(ops, p), off).H.max_abs_distance(ops.h0) ==
        0.0);
}

TEST_CASE("reduced-cavity composition matches the reduced closed forms") {
  // Reduction swaps the mode operators and nothing else, so composing with
  // reduced operators must land on the closed forms with a -> a_r.  Exercised
  // with a random unitary basis to rule out accidental structure.
  const GateParams p;

  SUBCASE("and and not") {
    const ReductionBasis basis = rotated_basis(12, 5, 301);
    const SpaceDescriptor red({5});
    const CavityOps ops = reduced_cavity_ops(basis, red, 0, p.delta, p.chi);
    check_triples_match(build_and(ops, p), closed_form_and(ops, p),
                        {"xi1", "xi2"}, 302);
    check_triples_match(build_not(ops, p), closed_form_not(ops, p), {"xi"},
                        303);
  }
  SUBCASE("latch") {
    const ReductionBasis ba = rotated_basis(12, 5, 304);
    const ReductionBasis bb = rotated_basis(12, 5, 305);
    const SpaceDescriptor red({5, 5});
    const CavityOps a = reduced_cavity_ops(ba, red, 0, p.delta, p.chi);
    const CavityOps b = reduced_cavity_ops(bb, red, 1, p.delta, p.chi);
    check_triples_match(build_nand_latch(a, b, p),
                        closed_form_nand_latch(a, b, p), {"set", "reset"},
                        306);
  }
}

TEST_CASE("full-dimension identity basis reproduces the number-state gate") {
  const GateParams p;
  const int n = 8;
  const SpaceDescriptor sp({n});
  const ReductionBasis basis = fock_truncation_basis(n, n);
  const CavityOps red = reduced_cavity_ops(basis, sp, 0, p.delta, p.chi);
  const CavityOps full = fock_cavity_ops(sp, 0, p.delta, p.chi);

  const SlhTriple gr = closed_form_and(red, p);
  const SlhTriple gf = closed_form_and(full, p);
  CHECK((gr.S - gf.S).cwiseAbs().maxCoeff() == 0.0);
  const std::map<std::string, cplx> drives = {{"xi1", cplx(3.0, 1.0)},
                                              {"xi2", cplx(-2.0, 0.5)}};
  const EvaluatedSlh er = evaluate(gr, drives);
  const EvaluatedSlh ef = evaluate(gf, drives);
  for (int k = 0; k < 3; ++k)
    CHECK(er.L[static_cast<std::size_t>(k)].max_abs_distance(
              ef.L[static_cast<std::size_t>(k)]) <= 1e-13);
  CHECK(er.H.max_abs_distance(ef.H) <= 1e-13);
}

TEST_CASE("compact master equations generate the same trace dynamics") {
  const GateParams p;

  SUBCASE("and") {
    const SpaceDescriptor sp({10});
    const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const ParametricLindblad compact = and_master_equation(ops, p);
    REQUIRE(compact.collapse.size() == 1);
    CHECK(compact.collapse[0].max_abs_distance(std::sqrt(2.0 * p.kappa) *
                                               ops.lower) <= 1e-12);
    check_same_generator(absorb_offsets(build_and(ops, p)), compact,
                         {"xi1", "xi2"}, 401);
  }
  SUBCASE("not") {
    const SpaceDescriptor sp({10});
    const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const ParametricLindblad compact = not_master_equation(ops, p);
    REQUIRE(compact.collapse.size() == 1);
    check_same_generator(absorb_offsets(build_not(ops, p)), compact, {"xi"},
                         402);
  }
  SUBCASE("latch") {
    const SpaceDescriptor sp({4, 4});
    const CavityOps a = fock_cavity_ops(sp, 0, p.delta, p.chi);
    const CavityOps b = fock_cavity_ops(sp, 1, p.delta, p.chi);
    const ParametricLindblad compact = latch_master_equation(a, b, p);
    REQUIRE(compact.collapse.size() == 4);
    const double ct = std::cos(p.latch_theta), st = std::sin(p.latch_theta);
    const cplx ph = std::exp(cplx(0.0, p.latch_phi));
    const double r1 = std::sqrt(0.5 * p.kappa * (1.0 + ct * ct));
    const cplx cross = std::sqrt(0.5 * p.kappa) * st * ph;
    const double rk = std::sqrt(p.kappa);
    CHECK(compact.collapse[0].max_abs_distance(r1 * a.lower) <= 1e-12);
    CHECK(compact.collapse[1].max_abs_distance(cross * a.lower -
                                               rk * b.lower) <= 1e-12);
    CHECK(compact.collapse[2].max_abs_distance(r1 * b.lower) <= 1e-12);
    CHECK(compact.collapse[3].max_abs_distance(cross * b.lower -
                                               rk * a.lower) <= 1e-12);
    check_same_generator(absorb_offsets(build_nand_latch(a, b, p)), compact,
                         {"set", "reset"}, 403);
  }
}

TEST_CASE("gate master equation dispatcher validates its inputs") {
  const GateParams p;
  const SpaceDescriptor sp({4});
  const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
  const SpaceDescriptor sp2({4, 4});
  const CavityOps a2 = fock_cavity_ops(sp2, 0, p.delta, p.chi);
  const CavityOps b2 = fock_cavity_ops(sp2, 1, p.delta, p.chi);

  CHECK(gate_master_equation(GateKind::And, {ops}, p).collapse.size() == 1);
  CHECK(gate_master_equation(GateKind::Not, {ops}, p).collapse.size() == 1);
  CHECK(gate_master_equation(GateKind::NandLatch, {a2, b2}, p)
            .collapse.size() == 4);
  CHECK_THROWS_AS(gate_master_equation(GateKind::And, {ops, ops}, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(gate_master_equation(GateKind::NandLatch, {ops}, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(gate_master_equation(static_cast<GateKind>(99), {ops}, p),
                  std::invalid_argument);
}

TEST_CASE("output observables carry the printed operator and offset") {
  const GateParams p;
  const SpaceDescriptor sp({8});
  const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
  const double rk = std::sqrt(p.kappa);
  const double r = 1.0 / std::sqrt(2.0);

  SUBCASE("and channel 2") {
    const SlhTriple g = build_and(ops, p);
    const Observable out = output_observable(g, 2, "eta_a");
    CHECK(out.name == "eta_a");
    const double ct = std::cos(p.and_theta), st = std::sin(p.and_theta);
    const cplx ph = std::exp(cplx(0.0, p.and_phi));
    CHECK(out.op.max_abs_distance(((ct * ph - st) * rk) * ops.lower) <= 1e-12);
    const std::map<std::string, cplx> drives = {{"xi1", cplx(2.0, 1.0)},
                                                {"xi2", cplx(1.0, -3.0)}};
    const cplx want = r * ct * ph * (drives.at("xi1") + drives.at("xi2"));
    CHECK(std::abs(out.offset.evaluate(drives) - want) <= 1e-12);

    // output_mean agrees with the printed expression on a random state.
    const Eigen::MatrixXcd rho = random_density(sp.total_dim(), 55);
    const QuantumState state = QuantumState::density(sp, rho);
    const cplx mean = output_mean(g, state, drives, 2);
    const cplx by_formula =
        (ct * ph - st) * rk * state.expectation(ops.lower) + want;
    CHECK(std::abs(mean - by_formula) <= 1e-10);
  }

  SUBCASE("not channel 4") {
    const SlhTriple g = build_not(ops, p);
    const Observable out = output_observable(g, 4, "eta_n");
    const double ct = std::cos(p.not_theta), st = std::sin(p.not_theta);
    CHECK(out.op.max_abs_distance((-st * rk) * ops.lower) <= 1e-12);
    const std::map<std::string, cplx> drives = {{"xi", cplx(4.0, 0.0)}};
    CHECK(std::abs(out.offset.evaluate(drives) - p.not_beta * ct) <= 1e-12);
  }

  SUBCASE("vacuum output of the undriven AND is zero") {
    const SlhTriple g = build_and(ops, p);
    const QuantumState vac = QuantumState::vacuum(sp);
    const std::map<std::string, cplx> off = {{"xi1", 0.0}, {"xi2", 0.0}};
    CHECK(std::abs(output_mean(g, vac, off, 2)) <= 1e-14);
  }
}

TEST_CASE("bias-only inversion point of the NOT gate sits near logic HIGH") {
  // With the input held LOW the NOT output should run at HIGH amplitude,
  // which by design equals the input HIGH level.
  const GateParams p;
  const SpaceDescriptor sp({75});
  const CavityOps ops = fock_cavity_ops(sp, 0, p.delta, p.chi);
  const std::map<std::string, cplx> low = {{"xi", 0.0}};

  const LindbladForm gen = not_master_equation(ops, p).evaluate(low);
  const SteadyStateResult ss = steady_state(gen);
  const Observable out = output_observable(build_not(ops, p), 4, "eta_n");
  const cplx mean = ss.state.expectation(out.op) + out.offset.evaluate(low);
  CHECK(std::abs(mean) == doctest::Approx(p.alpha).epsilon(0.05));
}

}  // TEST_SUITE
