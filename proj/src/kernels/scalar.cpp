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

#include "kerrsim/kernels/kernels.hpp"

namespace kerrsim::kernels::scalar {

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(std::size_t n, cplx alpha, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    sr += xr * yr + xi * yi;
    si += xr * yi - xi * yr;
  }
  return {sr, si};
}

double norm_sq(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void csr_matvec(std::size_t rows, const std::int64_t* row_ptr,
                const std::int32_t* col_idx, const cplx* values, const cplx* x,
                cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double ar = 0.0, ai = 0.0;
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const cplx v = values[k];
      const cplx xv = x[col_idx[k]];
      ar += v.real() * xv.real() - v.imag() * xv.imag();
      ai += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[r] = {ar, ai};
  }
}

void dense_matvec(std::size_t rows, std::size_t cols, const cplx* a,
                  const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* row = a + r * cols;
    double ar = 0.0, ai = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx v = row[c];
      const cplx xv = x[c];
      ar += v.real() * xv.real() - v.imag() * xv.imag();
      ai += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[r] = {ar, ai};
  }
}

const Kernels& table() {
  static const Kernels k{axpy, scale, dotc, norm_sq, csr_matvec, dense_matvec};
  return k;
}

}  // namespace kerrsim::kernels::scalar
