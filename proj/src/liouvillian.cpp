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

#include "kerrsim/liouvillian.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace kerrsim {

namespace {

SparseCd sparse_identity(Eigen::Index n) {
  SparseCd id(n, n);
  id.setIdentity();
  return id;
}

SparseCd kron(const SparseCd& a, const SparseCd& b) {
  SparseCd out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

}  // namespace

Eigen::MatrixXcd lindblad_apply(const Eigen::MatrixXcd& rho, const Operator& H,
                                const std::vector<Operator>& Ls) {
  const Eigen::Index n = rho.rows();
  if (rho.cols() != n) throw std::invalid_argument("lindblad_apply: rho not square");
  if (H.matrix().rows() != n)
    throw std::invalid_argument("lindblad_apply: dimension mismatch");
  const cplx mi(0.0, -1.0);
  Eigen::MatrixXcd out = mi * (H.matrix() * rho - rho * H.matrix());
  for (const auto& l : Ls) {
    if (l.space() != H.space())
      throw std::invalid_argument("lindblad_apply: collapse space mismatch");
    const auto& lm = l.matrix();
    const Eigen::MatrixXcd lrho = lm * rho;
    const SparseCd ldag = l.dagger().matrix();
    out.noalias() += lrho * ldag;
    const Eigen::MatrixXcd ll = ldag * lm;
    out.noalias() -= 0.5 * (ll * rho + rho * ll);
  }
  return out;
}

SparseCd liouvillian_matrix(const Operator& H,
                              const std::vector<Operator>& Ls) {
  const Eigen::Index n = H.matrix().rows();
  const SparseCd id = sparse_identity(n);
  const SparseCd hm = H.matrix();
  const SparseCd ht = hm.transpose();
  const cplx mi(0.0, -1.0);
  SparseCd m = mi * kron(id, hm) - mi * kron(ht, id);
  for (const auto& l : Ls) {
    if (l.space() != H.space())
      throw std::invalid_argument("liouvillian_matrix: space mismatch");
    const SparseCd lm = l.matrix();
    const SparseCd lc = lm.conjugate();
    const SparseCd lt = l.dagger().matrix() * lm;  // L^dag L
    const SparseCd ltt = lt.transpose();
    m += kron(lc, lm);
    m -= cplx(0.5) * kron(id, lt);
    m -= cplx(0.5) * kron(ltt, id);
  }
  m.makeCompressed();
  m.prune([](Eigen::Index, Eigen::Index, const cplx& v) {
    return v != cplx(0.0, 0.0);
  });
  return m;
}

CsrMatrix CsrMatrix::from(const SparseCd& m) {
  SparseCd c = m;
  c.makeCompressed();
  CsrMatrix out;
  out.rows = c.rows();
  out.cols = c.cols();
  out.row_ptr.assign(c.outerIndexPtr(), c.outerIndexPtr() + c.rows() + 1);
  out.col_idx.assign(c.innerIndexPtr(), c.innerIndexPtr() + c.nonZeros());
  out.values.assign(c.valuePtr(), c.valuePtr() + c.nonZeros());
  return out;
}

void CsrMatrix::apply(const cplx* x, cplx* y) const {
  kernels::csr_matvec(rows, row_ptr.data(), col_idx.data(), values.data(), x,
                      y);
}

void CsrMatrix::apply_add(cplx s, const cplx* x, cplx* y,
                          std::vector<cplx>& scratch) const {
  scratch.resize(static_cast<std::size_t>(rows));
  apply(x, scratch.data());
  kernels::axpy(rows, s, scratch.data(), y);
}

double CsrMatrix::one_norm() const {
  std::vector<double> col_sums(static_cast<std::size_t>(cols), 0.0);
  for (std::size_t k = 0; k < values.size(); ++k)
    col_sums[static_cast<std::size_t>(col_idx[k])] += std::abs(values[k]);
  double m = 0.0;
  for (double s : col_sums) m = std::max(m, s);
  return m;
}

AffineGeneratorFamily::AffineGeneratorFamily(
    const BuildFn& build, std::vector<std::string> param_names)
    : names_(std::move(param_names)) {
  std::map<std::string, cplx> zero;
  for (const auto& p : names_) zero[p] = cplx(0.0, 0.0);
  base_sparse_ = build(zero);
  base_ = CsrMatrix::from(base_sparse_);
  for (const auto& p : names_) {
    for (bool imag : {false, true}) {
      auto probe = zero;
      probe[p] = imag ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
      SparseCd diff = build(probe) - base_sparse_;
      diff.prune([](Eigen::Index, Eigen::Index, const cplx& v) {
        return std::abs(v) > 0.0;
      });
      if (diff.nonZeros() == 0) continue;
      Term t;
      t.name = p;
      t.imag_part = imag;
      t.sparse = diff;
      t.csr = CsrMatrix::from(diff);
      terms_.push_back(std::move(t));
    }
  }
}

void AffineGeneratorFamily::apply(const std::map<std::string, cplx>& drives,
                                  const cplx* x, cplx* y,
                                  std::vector<cplx>& scratch) const {
  base_.apply(x, y);
  for (const auto& t : terms_) {
    const auto it = drives.find(t.name);
    if (it == drives.end())
      throw std::invalid_argument("AffineGeneratorFamily: unbound drive " +
                                  t.name);
    const double w = t.imag_part ? it->second.imag() : it->second.real();
    if (w == 0.0) continue;
    t.csr.apply_add(cplx(w, 0.0), x, y, scratch);
  }
}

void AffineGeneratorFamily::apply(const std::map<std::string, cplx>& drives,
                                  const Eigen::VectorXcd& x,
                                  Eigen::VectorXcd& y,
                                  std::vector<cplx>& scratch) const {
  y.resize(x.size());
  apply(drives, x.data(), y.data(), scratch);
}

SparseCd AffineGeneratorFamily::matrix(
    const std::map<std::string, cplx>& drives) const {
  SparseCd m = base_sparse_;
  for (const auto& t : terms_) {
    const auto it = drives.find(t.name);
    if (it == drives.end())
      throw std::invalid_argument("AffineGeneratorFamily: unbound drive " +
                                  t.name);
    const double w = t.imag_part ? it->second.imag() : it->second.real();
    if (w == 0.0) continue;
    m += cplx(w, 0.0) * t.sparse;
  }
  m.makeCompressed();
  return m;
}

double AffineGeneratorFamily::norm_bound(
    const std::map<std::string, cplx>& drives) const {
  double bound = base_.one_norm();
  for (const auto& t : terms_) {
    const auto it = drives.find(t.name);
    const double w =
        it == drives.end()
            ? 0.0
            : (t.imag_part ? it->second.imag() : it->second.real());
    bound += std::abs(w) * t.csr.one_norm();
  }
  return bound;
}

AffineGeneratorFamily driven_liouvillian(const ParametricLindblad& f) {
  auto build = [&f](const std::map<std::string, cplx>& drives) {
    LindbladForm ev = f.evaluate(drives);
    std::vector<Operator> ls = ev.collapse;
    return liouvillian_matrix(ev.H, ls);
  };
  return AffineGeneratorFamily(build, f.parameter_names());
}

AffineGeneratorFamily driven_effective_generator(const ParametricLindblad& f) {
  auto build = [&f](const std::map<std::string, cplx>& drives) {
    LindbladForm ev = f.evaluate(drives);
    SparseCd a = cplx(0.0, -1.0) * SparseCd(ev.H.matrix());
    for (const auto& l : ev.collapse) {
      SparseCd ll = l.dagger().matrix() * l.matrix();
      a -= cplx(0.5, 0.0) * ll;
    }
    a.makeCompressed();
    return a;
  };
  return AffineGeneratorFamily(build, f.parameter_names());
}

}  // namespace kerrsim
