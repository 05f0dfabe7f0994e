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

#ifndef KERRSIM_KERNELS_KERNELS_HPP
#define KERRSIM_KERNELS_KERNELS_HPP

#include <complex>
#include <cstdint>
#include <string>

// Low-level array kernels for the hot loops of trajectory and master-equation
// integration: complex vector updates, reductions, and sparse/dense complex
// matrix-vector products.  Every kernel has a portable scalar reference
// implementation; on x86-64 an AVX2+FMA variant is selected at runtime when
// the CPU supports it.  The two variants are equivalence-tested against each
// other (they may differ by FMA rounding only).
namespace kerrsim::kernels {

using cplx = std::complex<double>;

struct Kernels {
  // y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  // x *= alpha
  void (*scale)(std::size_t n, cplx alpha, cplx* x);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum_i |x_i|^2
  double (*norm_sq)(std::size_t n, const cplx* x);
  // y = A x for A in CSR form (row_ptr has rows+1 entries)
  void (*csr_matvec)(std::size_t rows, const std::int64_t* row_ptr,
                     const std::int32_t* col_idx, const cplx* values,
                     const cplx* x, cplx* y);
  // y = A x for dense row-major A (rows x cols)
  void (*dense_matvec)(std::size_t rows, std::size_t cols, const cplx* a,
                       const cplx* x, cplx* y);
};

namespace scalar {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void scale(std::size_t n, cplx alpha, cplx* x);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
double norm_sq(std::size_t n, const cplx* x);
void csr_matvec(std::size_t rows, const std::int64_t* row_ptr,
                const std::int32_t* col_idx, const cplx* values, const cplx* x,
                cplx* y);
void dense_matvec(std::size_t rows, std::size_t cols, const cplx* a,
                  const cplx* x, cplx* y);
const Kernels& table();
}  // namespace scalar

#if KERRSIM_HAS_AVX2
namespace avx2 {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void scale(std::size_t n, cplx alpha, cplx* x);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
double norm_sq(std::size_t n, const cplx* x);
void csr_matvec(std::size_t rows, const std::int64_t* row_ptr,
                const std::int32_t* col_idx, const cplx* values, const cplx* x,
                cplx* y);
void dense_matvec(std::size_t rows, std::size_t cols, const cplx* a,
                  const cplx* x, cplx* y);
const Kernels& table();
}  // namespace avx2
#endif

// True when the running CPU reports AVX2 and FMA support.
bool cpu_supports_avx2();

// Dispatched kernel table: AVX2 when compiled in and supported, else scalar.
// The first call latches the decision for the lifetime of the process.
const Kernels& active();

// Name of the active variant ("avx2" or "scalar"), for logs and manifests.
std::string active_name();

// Convenience forwarding wrappers.
inline void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  active().axpy(n, alpha, x, y);
}
inline void scale(std::size_t n, cplx alpha, cplx* x) {
  active().scale(n, alpha, x);
}
inline cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return active().dotc(n, x, y);
}
inline double norm_sq(std::size_t n, const cplx* x) {
  return active().norm_sq(n, x);
}
inline void csr_matvec(std::size_t rows, const std::int64_t* row_ptr,
                       const std::int32_t* col_idx, const cplx* values,
                       const cplx* x, cplx* y) {
  active().csr_matvec(rows, row_ptr, col_idx, values, x, y);
}
inline void dense_matvec(std::size_t rows, std::size_t cols, const cplx* a,
                         const cplx* x, cplx* y) {
  active().dense_matvec(rows, cols, a, x, y);
}

}  // namespace kerrsim::kernels

#endif  // KERRSIM_KERNELS_KERNELS_HPP
