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

#include "kerrsim/components.hpp"

#include <cmath>
#include <stdexcept>

namespace kerrsim {

namespace {
SlhTriple static_system(const SpaceDescriptor& space, Eigen::MatrixXcd s) {
  SlhTriple g;
  g.space = space;
  g.S = std::move(s);
  g.L.assign(g.S.rows(), ParametricOperator::zero(space));
  g.H = ParametricOperator::zero(space);
  return g;
}
}  // namespace

SlhTriple identity_system(const SpaceDescriptor& space, int n) {
  if (n < 1) throw std::invalid_argument("identity_system: n < 1");
  return static_system(space, Eigen::MatrixXcd::Identity(n, n));
}

SlhTriple beamsplitter(const SpaceDescriptor& space, double theta) {
  Eigen::MatrixXcd s(2, 2);
  s << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return static_system(space, std::move(s));
}

SlhTriple phase_shift(const SpaceDescriptor& space, double phi) {
  Eigen::MatrixXcd s(1, 1);
  s(0, 0) = std::exp(cplx(0.0, phi));
  return static_system(space, std::move(s));
}

SlhTriple displacement(const SpaceDescriptor& space, const DriveExpr& amp) {
  SlhTriple g = static_system(space, Eigen::MatrixXcd::Identity(1, 1));
  g.L[0] = ParametricOperator(amp, Operator::identity(space));
  return g;
}

SlhTriple permutation(const SpaceDescriptor& space,
                      const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(n, false);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const int out = sigma[k];
    if (out < 1 || out > n || seen[out - 1]) {
      throw std::invalid_argument("permutation: sigma is not a permutation");
    }
    seen[out - 1] = true;
    s(out - 1, k) = 1.0;
  }
  return static_system(space, std::move(s));
}

CavityOps fock_cavity_ops(const SpaceDescriptor& space, int mode, double delta,
                          double chi) {
  return {annihilation(space, mode),
          kerr_hamiltonian(space, mode, delta, chi)};
}

SlhTriple kerr_cavity(const SpaceDescriptor& space, const CavityOps& ops,
                      double kappa) {
  SlhTriple g;
  g.space = space;
  g.S = Eigen::MatrixXcd::Identity(2, 2);
  ParametricOperator l(std::sqrt(kappa) * ops.lower);
  g.L = {l, l};
  g.H = ParametricOperator(ops.h0);
  return g;
}

SlhTriple kerr_cavity(const SpaceDescriptor& space, int mode, double kappa,
                      double delta, double chi) {
  return kerr_cavity(space, fock_cavity_ops(space, mode, delta, chi), kappa);
}

SlhTriple kerr_half1(const SpaceDescriptor& space, const CavityOps& ops,
                     double kappa) {
  SlhTriple g;
  g.space = space;
  g.S = Eigen::MatrixXcd::Identity(1, 1);
  g.L = {ParametricOperator(std::sqrt(kappa) * ops.lower)};
  g.H = ParametricOperator::zero(space);
  return g;
}

SlhTriple kerr_half1(const SpaceDescriptor& space, int mode, double kappa) {
  return kerr_half1(space, fock_cavity_ops(space, mode, 0.0, 0.0), kappa);
}

SlhTriple kerr_half2(const SpaceDescriptor& space, const CavityOps& ops,
                     double kappa) {
  SlhTriple g = kerr_half1(space, ops, kappa);
  g.H = ParametricOperator(ops.h0);
  return g;
}

SlhTriple kerr_half2(const SpaceDescriptor& space, int mode, double kappa,
                     double delta, double chi) {
  return kerr_half2(space, fock_cavity_ops(space, mode, delta, chi), kappa);
}

}  // namespace kerrsim
