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

#include <random>
#include <vector>

#include "doctest.h"
#include "kerrsim/kernels/kernels.hpp"

using kerrsim::kernels::cplx;
namespace kk = kerrsim::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

// random CSR matrix with ~fill fraction of entries per row
struct Csr {
  std::size_t rows, cols;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col_idx;
  std::vector<cplx> values;
};

Csr random_csr(std::size_t rows, std::size_t cols, double fill,
               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(fill);
  Csr m{rows, cols, {0}, {}, {}};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (keep(rng)) {
        m.col_idx.push_back(static_cast<std::int32_t>(c));
        m.values.push_back({u(rng), u(rng)});
      }
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.col_idx.size()));
  }
  return m;
}

double rel_err(cplx a, cplx b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar axpy/scale/dotc/norm_sq agree with direct evaluation") {
  const std::size_t n = 257;  // odd length exercises the remainder loop
  auto x = random_vec(n, 11);
  auto y = random_vec(n, 12);
  const cplx alpha{0.3, -1.7};

  auto y_ref = y;
  for (std::size_t i = 0; i < n; ++i) y_ref[i] += alpha * x[i];
  auto y2 = y;
  kk::scalar::axpy(n, alpha, x.data(), y2.data());
  for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(y2[i], y_ref[i]) < 1e-15);

  cplx dref = 0.0;
  for (std::size_t i = 0; i < n; ++i) dref += std::conj(x[i]) * y[i];
  CHECK(rel_err(kk::scalar::dotc(n, x.data(), y.data()), dref) < 1e-13);

  double nref = 0.0;
  for (std::size_t i = 0; i < n; ++i) nref += std::norm(x[i]);
  CHECK(kk::scalar::norm_sq(n, x.data()) == doctest::Approx(nref).epsilon(1e-13));
}

TEST_CASE("active table matches scalar reference on random data") {
  INFO("active variant: ", kk::active_name());
  const auto& act = kk::active();
  const auto& ref = kk::scalar::table();

  for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(7),
                        std::size_t(64), std::size_t(225), std::size_t(1001)}) {
    auto x = random_vec(n, 100 + n);
    auto y = random_vec(n, 200 + n);
    const cplx alpha{-0.8, 0.45};

    auto ya = y, yb = y;
    act.axpy(n, alpha, x.data(), ya.data());
    ref.axpy(n, alpha, x.data(), yb.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(ya[i], yb[i]) < 1e-14);

    auto xa = x, xb = x;
    act.scale(n, alpha, xa.data());
    ref.scale(n, alpha, xb.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(xa[i], xb[i]) < 1e-14);

    CHECK(rel_err(act.dotc(n, x.data(), y.data()),
                  ref.dotc(n, x.data(), y.data())) < 1e-13);
    CHECK(act.norm_sq(n, x.data()) ==
          doctest::Approx(ref.norm_sq(n, x.data())).epsilon(1e-13));
  }
}

TEST_CASE("csr and dense matvec variants agree") {
  const auto& act = kk::active();
  const auto& ref = kk::scalar::table();

  for (std::size_t n : {std::size_t(3), std::size_t(75), std::size_t(225)}) {
    auto m = random_csr(n, n, 0.15, 37 + n);
    auto x = random_vec(n, 55 + n);
    std::vector<cplx> ya(n), yb(n);
    act.csr_matvec(n, m.row_ptr.data(), m.col_idx.data(), m.values.data(),
                   x.data(), ya.data());
    ref.csr_matvec(n, m.row_ptr.data(), m.col_idx.data(), m.values.data(),
                   x.data(), yb.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(ya[i], yb[i]) < 1e-13);

    auto a = random_vec(n * n, 77 + n);
    act.dense_matvec(n, n, a.data(), x.data(), ya.data());
    ref.dense_matvec(n, n, a.data(), x.data(), yb.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(ya[i], yb[i]) < 1e-13);
  }
}

TEST_CASE("dense matvec handles rectangular shapes and ragged tails") {
  const auto& act = kk::active();
  const auto& ref = kk::scalar::table();
  for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 5}, {5, 1}, {3, 7}, {7, 3}, {16, 17}}) {
    auto a = random_vec(rows * cols, rows * 31 + cols);
    auto x = random_vec(cols, cols + 3);
    std::vector<cplx> ya(rows), yb(rows);
    act.dense_matvec(rows, cols, a.data(), x.data(), ya.data());
    ref.dense_matvec(rows, cols, a.data(), x.data(), yb.data());
    for (std::size_t i = 0; i < rows; ++i) CHECK(rel_err(ya[i], yb[i]) < 1e-13);
  }
}

}  // TEST_SUITE
