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
#include <random>

#include "doctest.h"
#include "kerrsim/components.hpp"
#include "kerrsim/slh.hpp"

using namespace kerrsim;

namespace {
const cplx kI(0.0, 1.0);

std::map<std::string, cplx> random_drives(const std::vector<std::string>& names,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::map<std::string, cplx> d;
  for (const auto& n : names) d[n] = cplx(u(rng), u(rng));
  return d;
}
}  // namespace

TEST_SUITE("slh") {

TEST_CASE("concat produces block-diagonal scattering and stacked couplings") {
  SpaceDescriptor sp({4});
  SlhTriple b = beamsplitter(sp, 0.7);
  SlhTriple p = phase_shift(sp, 1.1);
  SlhTriple g = concat(b, p);
  CHECK(g.channels() == 3);
  CHECK(g.S(0, 0).real() == doctest::Approx(std::cos(0.7)));
  CHECK(g.S(2, 2) == std::exp(kI * 1.1));
  CHECK(std::abs(g.S(0, 2)) == doctest::Approx(0.0));
  CHECK(g.scattering_unitarity_defect() < 1e-14);
  g.validate();
}

TEST_CASE("series of a displacement into a Kerr cavity gives the driven cavity") {
  const int n = 8;
  const double kappa = 25.0, delta = 50.0, chi = -delta / 60.0;
  SpaceDescriptor sp({n});
  SlhTriple cav = kerr_cavity(sp, 0, kappa, delta, chi);
  SlhTriple drive = concat(displacement(sp, DriveExpr::parameter("eps")),
                           identity_system(sp, 1));
  SlhTriple g = series(cav, drive);

  CHECK(g.channels() == 2);
  CHECK((g.S - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);

  const auto drives = std::map<std::string, cplx>{{"eps", cplx(1.7, 0.0)}};
  EvaluatedSlh ev = evaluate(g, drives);

  Operator a = annihilation(sp, 0);
  Operator sqka = std::sqrt(kappa) * a;
  Operator expected_l1 = sqka + cplx(1.7) * Operator::identity(sp);
  CHECK(ev.L[0].frobenius_distance(expected_l1) < 1e-12);
  CHECK(ev.L[1].frobenius_distance(sqka) < 1e-12);

  // H = H0 + i (sqrt(kappa)/2) eps (a - a^dag) for a real drive amplitude
  Operator expected_h =
      kerr_hamiltonian(sp, 0, delta, chi) +
      kI * (std::sqrt(kappa) / 2.0) * cplx(1.7) * (a - a.dagger());
  CHECK(ev.H.frobenius_distance(expected_h) < 1e-12);
}

TEST_CASE("series Hamiltonian term pairs conjugated drives with a") {
  // with a complex amplitude the drive term must stay Hermitian:
  // i (sqrt(kappa)/2) (conj(eps) a - eps a^dag)
  const int n = 6;
  const double kappa = 4.0;
  SpaceDescriptor sp({n});
  SlhTriple cav = kerr_cavity(sp, 0, kappa, 0.0, 0.0);
  SlhTriple g = series(cav, concat(displacement(sp, DriveExpr::parameter("e")),
                                   identity_system(sp, 1)));
  const cplx eps(0.8, -2.2);
  EvaluatedSlh ev = evaluate(g, {{"e", eps}});
  Operator a = annihilation(sp, 0);
  Operator expected = kI * (std::sqrt(kappa) / 2.0) *
                      (std::conj(eps) * a - eps * a.dagger());
  CHECK(ev.H.frobenius_distance(expected) < 1e-12);
  CHECK(ev.H.hermiticity_defect() < 1e-12);
}

TEST_CASE("permutation component reorders outputs") {
  SpaceDescriptor sp({2});
  SlhTriple p = permutation(sp, {1, 3, 2});
  Eigen::MatrixXcd expect(3, 3);
  expect << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK((p.S - expect).norm() < 1e-15);
  CHECK_THROWS_AS(permutation(sp, {1, 1, 2}), std::invalid_argument);
}

TEST_CASE("feedback matches the hand-derived loop elimination") {
  // G = B_theta <| (half-cavity [+] displacement); loop output 2 into input 1.
  // Solving the loop by hand:
  //   S_red = -s + c^2/(1-s) = 1
  //   L_red = sqrt(kappa_eff) a + xi,  sqrt(kappa_eff) = sqrt(kappa) c/(1-s)
  //   H_red = (i/2) sqrt(kappa_eff) (conj(xi) a - xi a^dag)
  const int n = 7;
  const double kappa = 4.0, theta = 0.3;
  const double c = std::cos(theta), s = std::sin(theta);
  SpaceDescriptor sp({n});
  SlhTriple inner = concat(kerr_half1(sp, 0, kappa),
                           displacement(sp, DriveExpr::parameter("xi")));
  SlhTriple g = series(beamsplitter(sp, theta), inner);
  SlhTriple red = feedback(g, 2, 1);

  CHECK(red.channels() == 1);
  CHECK(red.S(0, 0).real() == doctest::Approx(1.0));
  CHECK(red.S(0, 0).imag() == doctest::Approx(0.0));
  CHECK(red.scattering_unitarity_defect() < 1e-12);

  const cplx xi(1.3, -0.4);
  EvaluatedSlh ev = evaluate(red, {{"xi", xi}});
  Operator a = annihilation(sp, 0);
  const double sqk_eff = std::sqrt(kappa) * c / (1.0 - s);
  Operator l_expect = sqk_eff * a + xi * Operator::identity(sp);
  CHECK(ev.L[0].frobenius_distance(l_expect) < 1e-12);
  Operator h_expect =
      (kI * 0.5 * sqk_eff) * (std::conj(xi) * a - xi * a.dagger());
  CHECK(ev.H.frobenius_distance(h_expect) < 1e-12);

  // the loop is also physically a one-port cavity with enhanced coupling,
  // fed by the same displacement
  SlhTriple equiv = series(kerr_half1(sp, 0, sqk_eff * sqk_eff),
                           displacement(sp, DriveExpr::parameter("xi")));
  EvaluatedSlh ev2 = evaluate(equiv, {{"xi", xi}});
  CHECK(ev.L[0].frobenius_distance(ev2.L[0]) < 1e-12);
  CHECK(ev.H.frobenius_distance(ev2.H) < 1e-12);
}

TEST_CASE("feedback rejects an ill-posed loop") {
  SpaceDescriptor sp({2});
  SlhTriple id2 = identity_system(sp, 2);
  // S_kl = 1 on the diagonal: 1 - S_kl singular
  CHECK_THROWS_AS(feedback(id2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(feedback(id2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(feedback(id2, 1, 3), std::invalid_argument);
}

TEST_CASE("composition preserves scattering unitarity and drive affinity") {
  SpaceDescriptor sp({5});
  SlhTriple stage1 = concat(displacement(sp, DriveExpr::parameter("u")),
                            concat(kerr_half1(sp, 0, 2.0),
                                   displacement(sp, DriveExpr::parameter("v"))));
  SlhTriple stage2 = series(
      concat(beamsplitter(sp, 0.4), phase_shift(sp, 0.9)), stage1);
  SlhTriple g = feedback(stage2, 3, 1);
  CHECK(g.scattering_unitarity_defect() < 1e-12);
  // S carries no parameters by construction; H and L stay affine, so
  // evaluation at any complex drives must give a Hermitian Hamiltonian.
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto drives = random_drives({"u", "v"}, seed);
    EvaluatedSlh ev = evaluate(g, drives);
    CHECK(ev.H.hermiticity_defect() <
          1e-10 * std::max(1.0, ev.H.frobenius_norm()));
  }
}

TEST_CASE("drive-quadratic products with operator coefficients are rejected") {
  SpaceDescriptor sp({4});
  Operator a = annihilation(sp, 0);
  ParametricOperator pa(DriveExpr::parameter("x"), a);
  CHECK_THROWS_AS(pa * pa, std::invalid_argument);
  // identity-proportional quadratics are silently dropped
  ParametricOperator pid(DriveExpr::parameter("x"), Operator::identity(sp));
  ParametricOperator prod = pid * pid;
  CHECK(prod.evaluate({{"x", cplx(3.0, 1.0)}}).is_zero());
}

TEST_CASE("absorbed form moves drive offsets into the Hamiltonian") {
  const int n = 9;
  const double kappa = 25.0, delta = 50.0, chi = -delta / 60.0;
  SpaceDescriptor sp({n});
  SlhTriple g = series(kerr_cavity(sp, 0, kappa, delta, chi),
                       concat(displacement(sp, DriveExpr::parameter("eps")),
                              identity_system(sp, 1)));
  const double eps = 2.4;
  LindbladForm f = absorbed_lindblad(g, {{"eps", eps}});
  Operator a = annihilation(sp, 0);
  REQUIRE(f.collapse.size() == 2);
  CHECK(f.collapse[0].frobenius_distance(std::sqrt(kappa) * a) < 1e-12);
  CHECK(f.collapse[1].frobenius_distance(std::sqrt(kappa) * a) < 1e-12);
  Operator h_expect = kerr_hamiltonian(sp, 0, delta, chi) +
                      kI * std::sqrt(kappa) * cplx(eps) * (a - a.dagger());
  CHECK(f.H.frobenius_distance(h_expect) < 1e-11);
}

TEST_CASE("output means include the c-number drive offset") {
  const int n = 8;
  const double kappa = 25.0;
  SpaceDescriptor sp({n});
  SlhTriple g = series(kerr_cavity(sp, 0, kappa, 50.0, -50.0 / 60.0),
                       concat(displacement(sp, DriveExpr::parameter("eps")),
                              identity_system(sp, 1)));
  // coherent-ish test state |1>
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  psi[0] = std::sqrt(0.5);
  psi[1] = std::sqrt(0.5);
  QuantumState st = QuantumState::pure(sp, psi);
  Operator a = annihilation(sp, 0);
  const cplx a_mean = st.expectation(a);
  const cplx eps(2.0, 0.0);
  CHECK(std::abs(output_mean(g, st, {{"eps", eps}}, 1) -
                 (std::sqrt(kappa) * a_mean + eps)) < 1e-12);
  CHECK(std::abs(output_mean(g, st, {{"eps", eps}}, 2) -
                 std::sqrt(kappa) * a_mean) < 1e-12);
}

TEST_CASE("half cavities compose back to the full mirror pair") {
  SpaceDescriptor sp({6});
  const double kappa = 25.0, delta = 50.0, chi = -delta / 60.0;
  SlhTriple halves = concat(kerr_half1(sp, 0, kappa),
                            kerr_half2(sp, 0, kappa, delta, chi));
  SlhTriple full = kerr_cavity(sp, 0, kappa, delta, chi);
  EvaluatedSlh a = evaluate(halves, {});
  EvaluatedSlh b = evaluate(full, {});
  CHECK((a.S - b.S).norm() < 1e-14);
  CHECK(a.L[0].frobenius_distance(b.L[0]) < 1e-14);
  CHECK(a.L[1].frobenius_distance(b.L[1]) < 1e-14);
  CHECK(a.H.frobenius_distance(b.H) < 1e-14);
}

}  // TEST_SUITE
