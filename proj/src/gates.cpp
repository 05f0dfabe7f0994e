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

#include "kerrsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace kerrsim {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// i c (conj(P) x - P x^dagger): the Hermitian coupling of a drive amplitude
// P to a mode operator x.  For real P this is i c P (x - x^dagger).
ParametricOperator drive_coupling(double c, const DriveExpr& p,
                                  const Operator& x) {
  const cplx ic(0.0, c);
  return ParametricOperator(ic * p.conj(), x) +
         ParametricOperator(-ic * p, x.dagger());
}

NetworkNode series_of(std::vector<NetworkNode> stages) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Series;
  n.children = std::move(stages);
  return n;
}

NetworkNode concat_of(std::vector<NetworkNode> parts) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Concat;
  n.children = std::move(parts);
  return n;
}

NetworkNode identity_of(int channels) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Identity;
  n.channels = channels;
  return n;
}

NetworkNode splitter(double theta) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Beamsplitter;
  n.angle = theta;
  return n;
}

NetworkNode phase_of(double phi) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Phase;
  n.angle = phi;
  return n;
}

NetworkNode perm(std::vector<int> sigma) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Permutation;
  n.sigma = std::move(sigma);
  return n;
}

NetworkNode drive_param(const std::string& name) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Displacement;
  n.has_param = true;
  n.param = name;
  return n;
}

NetworkNode drive_value(cplx v) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Displacement;
  n.value = v;
  return n;
}

NetworkNode cavity(int mode) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::KerrCavity;
  n.mode = mode;
  return n;
}

NetworkNode half_in(int mode) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::KerrHalf1;
  n.mode = mode;
  return n;
}

NetworkNode half_out(int mode) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::KerrHalf2;
  n.mode = mode;
  return n;
}

NetworkNode loop(NetworkNode of, int output, int input) {
  NetworkNode n;
  n.kind = NetworkNode::Kind::Feedback;
  n.children.push_back(std::move(of));
  n.output_channel = output;
  n.input_channel = input;
  return n;
}

NetworkDescription gate_description(std::string name, int modes,
                                    const GateParams& p,
                                    std::vector<std::string> parameters,
                                    std::vector<int> output_channels,
                                    NetworkNode root) {
  NetworkDescription d;
  d.name = std::move(name);
  d.modes = modes;
  d.cavity = {p.kappa, p.delta, p.chi};
  d.parameters = std::move(parameters);
  for (const auto& pname : d.parameters) d.defaults[pname] = cplx(0.0);
  d.output_channels = std::move(output_channels);
  d.root = std::move(root);
  return d;
}

// One half of the latch: the through-port interferometer of one cavity plus
// its biased theta-splitter arm.
NetworkNode latch_arm(int mode, const GateParams& p) {
  return concat_of(
      {series_of({splitter(kQuarterPi),
                  concat_of({identity_of(1), half_in(mode)})}),
       series_of({concat_of({drive_value(p.latch_beta), half_out(mode)}),
                  splitter(p.latch_theta),
                  concat_of({phase_of(p.latch_phi), identity_of(1)})})});
}

void require_mode_count(const std::vector<CavityOps>& modes, std::size_t want,
                        const char* gate) {
  if (modes.size() != want) {
    throw std::invalid_argument(
        std::string("gate_master_equation: ") + gate + " takes " +
        std::to_string(want) + " cavity mode(s), got " +
        std::to_string(modes.size()));
  }
}

}  // namespace

NetworkDescription and_network(const GateParams& p) {
  NetworkNode root = series_of(
      {concat_of({drive_param("xi1"), drive_param("xi2"), identity_of(1)}),
       concat_of({splitter(kQuarterPi), identity_of(1)}),
       concat_of({identity_of(1),
                  series_of({cavity(0),
                             concat_of({phase_of(p.and_phi), identity_of(1)}),
                             splitter(p.and_theta)})})});
  return gate_description("and_gate", 1, p, {"xi1", "xi2"}, {2},
                          std::move(root));
}

NetworkDescription not_network(const GateParams& p) {
  NetworkNode interferometer = series_of(
      {concat_of({series_of({splitter(kQuarterPi),
                             concat_of({identity_of(1), half_in(0)})}),
                  identity_of(1)}),
       concat_of({identity_of(1),
                  series_of({perm({2, 1}), splitter(p.not_theta_p),
                             concat_of({phase_of(p.not_phi_p),
                                        identity_of(1)})})}),
       perm({2, 1, 3}), concat_of({splitter(kQuarterPi), identity_of(1)})});
  NetworkNode readout = series_of(
      {concat_of({identity_of(1), half_out(0)}), splitter(p.not_theta)});
  NetworkNode root = series_of(
      {concat_of({drive_param("xi"), drive_value(p.alpha),
                  drive_value(p.not_beta_p), drive_value(p.not_beta),
                  identity_of(1)}),
       concat_of({std::move(interferometer), std::move(readout)})});
  return gate_description("not_gate", 1, p, {"xi"}, {4}, std::move(root));
}

NetworkDescription nand_latch_network(const GateParams& p) {
  NetworkNode pair = concat_of({latch_arm(0, p), latch_arm(1, p)});
  NetworkNode cross = loop(loop(std::move(pair), 3, 6), 6, 2);
  NetworkNode root = series_of(
      {concat_of({drive_param("set"), identity_of(2), drive_param("reset"),
                  identity_of(2)}),
       perm({1, 5, 6, 4, 2, 3}), std::move(cross),
       perm({1, 2, 6, 4, 5, 3})});
  return gate_description("nand_latch", 2, p, {"set", "reset"}, {2, 5},
                          std::move(root));
}

SlhTriple build_and(const CavityOps& cavity_ops, const GateParams& p) {
  return build_network(and_network(p), std::vector<CavityOps>{cavity_ops});
}

SlhTriple build_not(const CavityOps& cavity_ops, const GateParams& p) {
  return build_network(not_network(p), std::vector<CavityOps>{cavity_ops});
}

SlhTriple build_nand_latch(const CavityOps& mode_a, const CavityOps& mode_b,
                           const GateParams& p) {
  return build_network(nand_latch_network(p),
                       std::vector<CavityOps>{mode_a, mode_b});
}

SlhTriple closed_form_and(const CavityOps& cavity_ops, const GateParams& p) {
  const SpaceDescriptor& sp = cavity_ops.lower.space();
  const Operator& a = cavity_ops.lower;
  const Operator id = Operator::identity(sp);
  const double r = 1.0 / std::sqrt(2.0);
  const double rk = std::sqrt(p.kappa);
  const double ct = std::cos(p.and_theta), st = std::sin(p.and_theta);
  const cplx ph = std::exp(cplx(0.0, p.and_phi));
  const DriveExpr xi1 = DriveExpr::parameter("xi1");
  const DriveExpr xi2 = DriveExpr::parameter("xi2");
  const DriveExpr xi_sum = xi1 + xi2;

  SlhTriple g;
  g.space = sp;
  g.S = Eigen::MatrixXcd(3, 3);
  g.S << cplx(r), cplx(-r), cplx(0.0),           //
      r * ct * ph, r * ct * ph, cplx(-st),       //
      r * st * ph, r * st * ph, cplx(ct);
  g.L = {ParametricOperator(cplx(r) * (xi1 - xi2), id),
         ParametricOperator((ct * ph - st) * rk * a) +
             ParametricOperator((r * ct) * ph * xi_sum, id),
         ParametricOperator((st * ph + ct) * rk * a) +
             ParametricOperator((r * st) * ph * xi_sum, id)};
  g.H = ParametricOperator(cavity_ops.h0) +
        drive_coupling(0.25 * std::sqrt(2.0 * p.kappa), xi_sum, a);
  return g;
}

SlhTriple closed_form_not(const CavityOps& cavity_ops, const GateParams& p) {
  const SpaceDescriptor& sp = cavity_ops.lower.space();
  const Operator& a = cavity_ops.lower;
  const Operator id = Operator::identity(sp);
  const double r = 1.0 / std::sqrt(2.0);
  const double rk = std::sqrt(p.kappa);
  const double rk2 = std::sqrt(0.5 * p.kappa);
  const double ct = std::cos(p.not_theta), st = std::sin(p.not_theta);
  const double cp = std::cos(p.not_theta_p), sp2 = std::sin(p.not_theta_p);
  const cplx ph = std::exp(cplx(0.0, p.not_phi_p));
  const cplx q_mm = 0.5 * (-1.0 - ph * sp2);
  const cplx q_pm = 0.5 * (1.0 - ph * sp2);
  const DriveExpr xi = DriveExpr::parameter("xi");

  SlhTriple g;
  g.space = sp;
  g.S = Eigen::MatrixXcd::Zero(5, 5);
  g.S.topLeftCorner(3, 3) << q_mm, q_pm, r * cp * ph,  //
      q_pm, q_mm, r * cp * ph,                         //
      cplx(r * cp), cplx(r * cp), cplx(sp2);
  g.S.bottomRightCorner(2, 2) << cplx(ct), cplx(-st), cplx(st), cplx(ct);

  const Operator mirror = -(rk2 * sp2) * ph * a;
  g.L = {ParametricOperator(mirror) +
             ParametricOperator(
                 q_mm * xi +
                     DriveExpr(q_pm * p.alpha + r * cp * ph * p.not_beta_p),
                 id),
         ParametricOperator(mirror) +
             ParametricOperator(
                 q_pm * xi +
                     DriveExpr(q_mm * p.alpha + r * cp * ph * p.not_beta_p),
                 id),
         ParametricOperator((rk * cp) * a) +
             ParametricOperator(
                 cplx(r * cp) * xi +
                     DriveExpr(r * cp * p.alpha + sp2 * p.not_beta_p),
                 id),
         ParametricOperator((-rk * st) * a) +
             ParametricOperator(DriveExpr(ct * p.not_beta), id),
         ParametricOperator((rk * ct) * a) +
             ParametricOperator(DriveExpr(st * p.not_beta), id)};
  g.H = ParametricOperator(cavity_ops.h0) +
        drive_coupling(0.25 * std::sqrt(2.0 * p.kappa),
                       xi + DriveExpr(p.alpha), a);
  return g;
}

SlhTriple closed_form_nand_latch(const CavityOps& mode_a,
                                 const CavityOps& mode_b,
                                 const GateParams& p) {
  const SpaceDescriptor& sp = mode_a.lower.space();
  const Operator& a = mode_a.lower;
  const Operator& b = mode_b.lower;
  const Operator id = Operator::identity(sp);
  const double r = 1.0 / std::sqrt(2.0);
  const double rk = std::sqrt(p.kappa);
  const double rk2 = std::sqrt(0.5 * p.kappa);
  const double ct = std::cos(p.latch_theta), st = std::sin(p.latch_theta);
  const cplx ph = std::exp(cplx(0.0, p.latch_phi));
  const cplx bias = (r * ct) * ph * p.latch_beta;
  const DriveExpr set = DriveExpr::parameter("set");
  const DriveExpr reset = DriveExpr::parameter("reset");

  Eigen::MatrixXcd s1(3, 3);
  s1 << cplx(r), -(r * ct) * ph, (r * st) * ph,  //
      cplx(r), (r * ct) * ph, -(r * st) * ph,    //
      cplx(0.0), cplx(st), cplx(ct);

  SlhTriple g;
  g.space = sp;
  g.S = Eigen::MatrixXcd::Zero(6, 6);
  g.S.topLeftCorner(3, 3) = s1;
  g.S.bottomRightCorner(3, 3) = s1;

  const Operator cross_a = (rk2 * st) * ph * a;
  const Operator cross_b = (rk2 * st) * ph * b;
  g.L = {ParametricOperator(cross_b) +
             ParametricOperator(cplx(r) * set + DriveExpr(-bias), id),
         ParametricOperator(rk * a - cross_b) +
             ParametricOperator(cplx(r) * set + DriveExpr(bias), id),
         ParametricOperator((rk * ct) * b) +
             ParametricOperator(DriveExpr(st * p.latch_beta), id),
         ParametricOperator(cross_a) +
             ParametricOperator(cplx(r) * reset + DriveExpr(-bias), id),
         ParametricOperator(rk * b - cross_a) +
             ParametricOperator(cplx(r) * reset + DriveExpr(bias), id),
         ParametricOperator((rk * ct) * a) +
             ParametricOperator(DriveExpr(st * p.latch_beta), id)};

  const double hc = 0.25 * std::sqrt(2.0 * p.kappa);
  const double hop = -(p.kappa * r) * st * std::sin(p.latch_phi);
  g.H = ParametricOperator(mode_a.h0 + mode_b.h0 +
                           hop * (a * b.dagger() + a.dagger() * b)) +
        drive_coupling(hc, set + DriveExpr(ct * ph * p.latch_beta), a) +
        drive_coupling(hc, reset + DriveExpr(ct * ph * p.latch_beta), b);
  return g;
}

// Both mirror channels of the AND/NOT cavity collapse through the same
// operator sqrt(kappa) a; a single operator sqrt(2 kappa) a carries the two
// rates exactly.
ParametricLindblad and_master_equation(const CavityOps& cavity_ops,
                                       const GateParams& p) {
  ParametricLindblad f;
  f.H = ParametricOperator(cavity_ops.h0) +
        drive_coupling(std::sqrt(0.5 * p.kappa),
                       DriveExpr::parameter("xi1") +
                           DriveExpr::parameter("xi2"),
                       cavity_ops.lower);
  f.collapse = {std::sqrt(2.0 * p.kappa) * cavity_ops.lower};
  return f;
}

ParametricLindblad not_master_equation(const CavityOps& cavity_ops,
                                       const GateParams& p) {
  ParametricLindblad f;
  f.H = ParametricOperator(cavity_ops.h0) +
        drive_coupling(std::sqrt(0.5 * p.kappa),
                       DriveExpr::parameter("xi") + DriveExpr(p.alpha),
                       cavity_ops.lower);
  f.collapse = {std::sqrt(2.0 * p.kappa) * cavity_ops.lower};
  return f;
}

ParametricLindblad latch_master_equation(const CavityOps& mode_a,
                                         const CavityOps& mode_b,
                                         const GateParams& p) {
  const Operator& a = mode_a.lower;
  const Operator& b = mode_b.lower;
  const double r = 1.0 / std::sqrt(2.0);
  const double rk = std::sqrt(p.kappa);
  const double rk2 = std::sqrt(0.5 * p.kappa);
  const double ct = std::cos(p.latch_theta), st = std::sin(p.latch_theta);
  const cplx ph = std::exp(cplx(0.0, p.latch_phi));
  const double hc = std::sqrt(0.5 * p.kappa);
  const double hop = -(p.kappa * r) * st * std::sin(p.latch_phi);
  const double straight = std::sqrt(0.5 * p.kappa * (1.0 + ct * ct));

  ParametricLindblad f;
  f.H = ParametricOperator(mode_a.h0 + mode_b.h0 +
                           hop * (a * b.dagger() + a.dagger() * b)) +
        drive_coupling(hc,
                       DriveExpr::parameter("set") +
                           DriveExpr(ct * ph * p.latch_beta),
                       a) +
        drive_coupling(hc,
                       DriveExpr::parameter("reset") +
                           DriveExpr(ct * ph * p.latch_beta),
                       b);
  f.collapse = {straight * a, (rk2 * st) * ph * a - rk * b, straight * b,
                (rk2 * st) * ph * b - rk * a};
  return f;
}

ParametricLindblad gate_master_equation(GateKind kind,
                                        const std::vector<CavityOps>& modes,
                                        const GateParams& p) {
  switch (kind) {
    case GateKind::And:
      require_mode_count(modes, 1, "And");
      return and_master_equation(modes[0], p);
    case GateKind::Not:
      require_mode_count(modes, 1, "Not");
      return not_master_equation(modes[0], p);
    case GateKind::NandLatch:
      require_mode_count(modes, 2, "NandLatch");
      return latch_master_equation(modes[0], modes[1], p);
  }
  throw std::invalid_argument("gate_master_equation: unknown gate kind");
}

Observable output_observable(const SlhTriple& g, int k,
                             const std::string& name) {
  if (k < 1 || k > g.channels()) {
    throw std::invalid_argument("output_observable: channel " +
                                std::to_string(k) + " out of range");
  }
  auto [op_part, offset] = g.L[static_cast<std::size_t>(k - 1)].split_identity();
  if (!op_part.linear_parts().empty()) {
    throw std::invalid_argument("output_observable: channel " +
                                std::to_string(k) +
                                " has a drive-dependent operator part");
  }
  return Observable(name, op_part.constant_part(), offset);
}

}  // namespace kerrsim
