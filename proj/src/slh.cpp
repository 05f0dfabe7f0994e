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

#include "kerrsim/slh.hpp"

#include <algorithm>
#include <stdexcept>

namespace kerrsim {

namespace {
const cplx kI(0.0, 1.0);

void require_space(const SpaceDescriptor& a, const SpaceDescriptor& b,
                   const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": space mismatch " +
                                a.to_string() + " vs " + b.to_string());
  }
}
}  // namespace

DriveExpr DriveExpr::parameter(const std::string& name, bool conjugated) {
  DriveExpr e;
  e.linear_[{name, conjugated}] = 1.0;
  return e;
}

DriveExpr DriveExpr::operator+(const DriveExpr& o) const {
  DriveExpr r = *this;
  r.constant_ += o.constant_;
  for (const auto& [k, v] : o.linear_) {
    auto it = r.linear_.find(k);
    if (it == r.linear_.end()) {
      r.linear_[k] = v;
    } else {
      it->second += v;
      if (it->second == cplx(0.0)) r.linear_.erase(it);
    }
  }
  return r;
}

DriveExpr DriveExpr::operator-(const DriveExpr& o) const {
  return *this + (cplx(-1.0) * o);
}

DriveExpr DriveExpr::conj() const {
  DriveExpr r;
  r.constant_ = std::conj(constant_);
  for (const auto& [k, v] : linear_) {
    r.linear_[{k.name, !k.conjugated}] = std::conj(v);
  }
  return r;
}

DriveExpr operator*(cplx s, const DriveExpr& e) {
  DriveExpr r;
  if (s == cplx(0.0)) return r;
  r.constant_ = s * e.constant_;
  for (const auto& [k, v] : e.linear_) r.linear_[k] = s * v;
  return r;
}

cplx DriveExpr::evaluate(const std::map<std::string, cplx>& values) const {
  cplx acc = constant_;
  for (const auto& [k, v] : linear_) {
    auto it = values.find(k.name);
    if (it == values.end()) {
      throw std::invalid_argument("DriveExpr: no value bound for parameter '" +
                                  k.name + "'");
    }
    acc += v * (k.conjugated ? std::conj(it->second) : it->second);
  }
  return acc;
}

ParametricOperator::ParametricOperator(Operator constant)
    : constant_(std::move(constant)) {}

ParametricOperator::ParametricOperator(const DriveExpr& expr,
                                       const Operator& basis_op) {
  constant_ = expr.constant() * basis_op;
  for (const auto& [k, v] : expr.linear()) linear_[k] = v * basis_op;
  drop_zero_terms();
}

ParametricOperator ParametricOperator::zero(const SpaceDescriptor& space) {
  return ParametricOperator(Operator::zero(space));
}

bool ParametricOperator::is_zero() const {
  if (!constant_.is_zero()) return false;
  for (const auto& [k, op] : linear_) {
    if (!op.is_zero()) return false;
  }
  return true;
}

void ParametricOperator::drop_zero_terms() {
  for (auto it = linear_.begin(); it != linear_.end();) {
    if (it->second.is_zero()) {
      it = linear_.erase(it);
    } else {
      ++it;
    }
  }
}

ParametricOperator ParametricOperator::operator+(
    const ParametricOperator& o) const {
  require_space(space(), o.space(), "ParametricOperator add");
  ParametricOperator r = *this;
  r.constant_ = r.constant_ + o.constant_;
  for (const auto& [k, op] : o.linear_) {
    auto it = r.linear_.find(k);
    if (it == r.linear_.end()) {
      r.linear_[k] = op;
    } else {
      it->second = it->second + op;
    }
  }
  r.drop_zero_terms();
  return r;
}

ParametricOperator ParametricOperator::operator-(
    const ParametricOperator& o) const {
  return *this + (cplx(-1.0) * o);
}

ParametricOperator& ParametricOperator::operator+=(
    const ParametricOperator& o) {
  *this = *this + o;
  return *this;
}

ParametricOperator operator*(cplx s, const ParametricOperator& o) {
  ParametricOperator r;
  r.constant_ = s * o.constant_;
  for (const auto& [k, op] : o.linear_) r.linear_[k] = s * op;
  r.drop_zero_terms();
  return r;
}

ParametricOperator ParametricOperator::dagger() const {
  ParametricOperator r;
  r.constant_ = constant_.dagger();
  for (const auto& [k, op] : linear_) {
    r.linear_[{k.name, !k.conjugated}] = op.dagger();
  }
  return r;
}

ParametricOperator ParametricOperator::operator*(
    const ParametricOperator& o) const {
  require_space(space(), o.space(), "ParametricOperator mul");
  ParametricOperator r;
  r.constant_ = constant_ * o.constant_;
  for (const auto& [k, op] : o.linear_) {
    r.linear_[k] = constant_ * op;
  }
  for (const auto& [k, op] : linear_) {
    auto it = r.linear_.find(k);
    if (it == r.linear_.end()) {
      r.linear_[k] = op * o.constant_;
    } else {
      it->second = it->second + op * o.constant_;
    }
  }
  // Terms quadratic in the drives: legal only when proportional to the
  // identity (global phase), in which case they are dropped.
  for (const auto& [ka, opa] : linear_) {
    for (const auto& [kb, opb] : o.linear_) {
      if (opa.is_zero() || opb.is_zero()) continue;
      Operator prod = opa * opb;
      if (!prod.identity_multiple().first) {
        throw std::invalid_argument(
            "ParametricOperator mul: drive-quadratic term with non-identity "
            "operator coefficient (affinity violated)");
      }
    }
  }
  r.drop_zero_terms();
  return r;
}

ParametricOperator ParametricOperator::im_part() const {
  ParametricOperator adj = dagger();
  return cplx(0.0, -0.5) * (*this - adj);
}

Operator ParametricOperator::evaluate(
    const std::map<std::string, cplx>& values) const {
  Operator acc = constant_;
  for (const auto& [k, op] : linear_) {
    auto it = values.find(k.name);
    if (it == values.end()) {
      throw std::invalid_argument(
          "ParametricOperator: no value bound for parameter '" + k.name + "'");
    }
    const cplx v = k.conjugated ? std::conj(it->second) : it->second;
    acc = acc + v * op;
  }
  return acc;
}

std::pair<ParametricOperator, DriveExpr> ParametricOperator::split_identity()
    const {
  ParametricOperator op_part = ParametricOperator::zero(space());
  DriveExpr scalar_part;
  // Identity component of a coefficient: the exact multiple when the
  // coefficient is one, otherwise the trace projection (so a coupling like
  // sqrt(kappa) a + c stays separable even though the sum is stored as a
  // single constant operator).
  const double dim = static_cast<double>(constant_.dim());
  const auto split_op = [&](const Operator& x) -> std::pair<Operator, cplx> {
    auto [is_id, c] = x.identity_multiple();
    if (is_id) return {Operator::zero(x.space()), c};
    const cplx m = x.trace() / dim;
    if (m == cplx(0.0)) return {x, cplx(0.0)};
    return {x - m * Operator::identity(x.space()), m};
  };
  {
    auto [rest, c] = split_op(constant_);
    op_part.constant_ = std::move(rest);
    if (c != cplx(0.0)) scalar_part = scalar_part + DriveExpr(c);
  }
  for (const auto& [k, op] : linear_) {
    auto [rest, c] = split_op(op);
    if (!rest.is_zero()) op_part.linear_[k] = std::move(rest);
    if (c != cplx(0.0)) {
      scalar_part =
          scalar_part + c * DriveExpr::parameter(k.name, k.conjugated);
    }
  }
  return {op_part, scalar_part};
}

double SlhTriple::scattering_unitarity_defect() const {
  const int n = channels();
  Eigen::MatrixXcd d =
      S.adjoint() * S - Eigen::MatrixXcd::Identity(n, n);
  return n == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

void SlhTriple::validate() const {
  if (S.rows() != channels() || S.cols() != channels()) {
    throw std::invalid_argument("SlhTriple: S shape does not match channels");
  }
  for (const auto& l : L) require_space(l.space(), space, "SlhTriple L");
  require_space(H.space(), space, "SlhTriple H");
  if (scattering_unitarity_defect() > 1e-10) {
    throw std::invalid_argument("SlhTriple: S is not unitary");
  }
}

SlhTriple concat(const SlhTriple& g1, const SlhTriple& g2) {
  require_space(g1.space, g2.space, "concat");
  const int n1 = g1.channels(), n2 = g2.channels();
  SlhTriple r;
  r.space = g1.space;
  r.S = Eigen::MatrixXcd::Zero(n1 + n2, n1 + n2);
  r.S.topLeftCorner(n1, n1) = g1.S;
  r.S.bottomRightCorner(n2, n2) = g2.S;
  r.L = g1.L;
  r.L.insert(r.L.end(), g2.L.begin(), g2.L.end());
  r.H = g1.H + g2.H;
  return r;
}

SlhTriple series(const SlhTriple& g2, const SlhTriple& g1) {
  require_space(g1.space, g2.space, "series");
  if (g1.channels() != g2.channels()) {
    throw std::invalid_argument("series: channel count mismatch");
  }
  const int n = g1.channels();
  SlhTriple r;
  r.space = g1.space;
  r.S = g2.S * g1.S;
  r.L.reserve(n);
  for (int i = 0; i < n; ++i) {
    ParametricOperator li = g2.L[i];
    for (int j = 0; j < n; ++j) {
      if (g2.S(i, j) != cplx(0.0)) li += g2.S(i, j) * g1.L[j];
    }
    r.L.push_back(std::move(li));
  }
  // H = H1 + H2 + Im(L2^dag S2 L1)
  ParametricOperator cross = ParametricOperator::zero(r.space);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g2.S(i, j) == cplx(0.0)) continue;
      if (g2.L[i].is_zero() || g1.L[j].is_zero()) continue;
      cross += g2.S(i, j) * (g2.L[i].dagger() * g1.L[j]);
    }
  }
  r.H = g1.H + g2.H + cross.im_part();
  return r;
}

SlhTriple feedback(const SlhTriple& g, int k, int l) {
  const int n = g.channels();
  if (k < 1 || k > n || l < 1 || l > n) {
    throw std::invalid_argument("feedback: channel index out of range");
  }
  const int ko = k - 1, li = l - 1;
  const cplx skl = g.S(ko, li);
  const cplx one_minus = cplx(1.0) - skl;
  if (std::abs(one_minus) < 1e-12) {
    throw std::invalid_argument(
        "feedback: 1 - S_kl is singular, loop is ill posed");
  }
  const cplx inv = cplx(1.0) / one_minus;

  SlhTriple r;
  r.space = g.space;
  std::vector<int> rows, cols;  // surviving outputs / inputs (0-based)
  for (int i = 0; i < n; ++i) {
    if (i != ko) rows.push_back(i);
    if (i != li) cols.push_back(i);
  }
  const int m = n - 1;
  r.S = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      r.S(i, j) = g.S(rows[i], cols[j]) +
                  g.S(rows[i], li) * inv * g.S(ko, cols[j]);
    }
  }
  r.L.reserve(m);
  for (int i = 0; i < m; ++i) {
    ParametricOperator lnew = g.L[rows[i]];
    const cplx c = g.S(rows[i], li) * inv;
    if (c != cplx(0.0)) lnew += c * g.L[ko];
    r.L.push_back(std::move(lnew));
  }
  // H += Im( (sum_j L_j^dag S_jl) (1 - S_kl)^{-1} L_k )
  ParametricOperator weighted = ParametricOperator::zero(g.space);
  for (int j = 0; j < n; ++j) {
    if (g.S(j, li) == cplx(0.0) || g.L[j].is_zero()) continue;
    weighted += g.S(j, li) * g.L[j].dagger();
  }
  ParametricOperator corr = ParametricOperator::zero(g.space);
  if (!weighted.is_zero() && !g.L[ko].is_zero()) {
    corr = inv * (weighted * g.L[ko]);
  }
  r.H = g.H + corr.im_part();
  return r;
}

EvaluatedSlh evaluate(const SlhTriple& g,
                      const std::map<std::string, cplx>& drives,
                      double herm_tol) {
  EvaluatedSlh ev;
  ev.S = g.S;
  ev.L.reserve(g.channels());
  for (const auto& l : g.L) ev.L.push_back(l.evaluate(drives));
  ev.H = g.H.evaluate(drives);
  const double defect = ev.H.hermiticity_defect();
  const double scale = std::max(1.0, ev.H.frobenius_norm());
  if (defect > herm_tol * scale) {
    throw std::runtime_error("evaluate: Hamiltonian not Hermitian (defect " +
                             std::to_string(defect) + ")");
  }
  return ev;
}

std::vector<std::string> ParametricLindblad::parameter_names() const {
  std::vector<std::string> names;
  for (const auto& [key, op] : H.linear_parts()) {
    (void)op;
    if (std::find(names.begin(), names.end(), key.name) == names.end())
      names.push_back(key.name);
  }
  return names;
}

LindbladForm ParametricLindblad::evaluate(
    const std::map<std::string, cplx>& drives, double herm_tol) const {
  LindbladForm f;
  f.H = H.evaluate(drives);
  const double defect = f.H.hermiticity_defect();
  if (defect > herm_tol * std::max(1.0, f.H.frobenius_norm())) {
    throw std::runtime_error(
        "ParametricLindblad: H not Hermitian at the given drives (defect " +
        std::to_string(defect) + ")");
  }
  f.collapse = collapse;
  return f;
}

ParametricLindblad absorb_offsets(const SlhTriple& g) {
  ParametricLindblad f;
  f.H = g.H;
  for (const auto& l : g.L) {
    auto [op_part, scalar_part] = l.split_identity();
    if (op_part.is_zero()) continue;  // pure c-number channel: no dissipation
    if (!op_part.linear_parts().empty()) {
      throw std::invalid_argument(
          "absorb_offsets: coupling operator part depends on a drive");
    }
    Operator lop = op_part.constant_part();
    if (!scalar_part.is_constant() || scalar_part.constant() != cplx(0.0)) {
      // (i/2)(conj(c) l - c l^dag)
      f.H += ParametricOperator(cplx(0.0, 0.5) * scalar_part.conj(), lop) -
             ParametricOperator(cplx(0.0, 0.5) * scalar_part, lop.dagger());
    }
    f.collapse.push_back(std::move(lop));
  }
  return f;
}

LindbladForm absorbed_lindblad(const SlhTriple& g,
                               const std::map<std::string, cplx>& drives) {
  return absorb_offsets(g).evaluate(drives);
}

cplx output_mean(const SlhTriple& g, const QuantumState& state,
                 const std::map<std::string, cplx>& drives, int k) {
  if (k < 1 || k > g.channels()) {
    throw std::invalid_argument("output_mean: channel out of range");
  }
  auto [op_part, scalar_part] = g.L[k - 1].split_identity();
  cplx mean = scalar_part.evaluate(drives);
  if (!op_part.is_zero()) {
    mean += state.expectation(op_part.evaluate(drives));
  }
  return mean;
}

}  // namespace kerrsim
