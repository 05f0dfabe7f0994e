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

// AVX2+FMA variants.  Complex doubles are kept in their natural interleaved
// (re, im) layout, two complex values per 256-bit register.  The complex
// product uses the usual vmovddup / vpermilpd / vfmaddsub sequence:
//   even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br.
// This translation unit is the only one compiled with -mavx2 -mfma; callers
// reach it through the runtime-dispatched table in dispatch.cpp.

#include <immintrin.h>

#include "kerrsim/kernels/kernels.hpp"

namespace kerrsim::kernels::avx2 {

namespace {

// product of two packed complex pairs
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d br = _mm256_movedup_pd(b);            // [br0 br0 br1 br1]
  __m256d bi = _mm256_permute_pd(b, 0xF);       // [bi0 bi0 bi1 bi1]
  __m256d as = _mm256_permute_pd(a, 0x5);       // [ai0 ar0 ai1 ar1]
  __m256d t = _mm256_mul_pd(as, bi);            // [ai*bi ar*bi ...]
  return _mm256_fmaddsub_pd(a, br, t);
}

// acc += a * b
inline __m256d cfma(__m256d acc, __m256d a, __m256d b) {
  return _mm256_add_pd(acc, cmul(a, b));
}

inline __m256d broadcast(cplx v) {
  return _mm256_setr_pd(v.real(), v.imag(), v.real(), v.imag());
}

// horizontal sum of the two complex lanes
inline cplx reduce(__m256d acc) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  return {buf[0] + buf[2], buf[1] + buf[3]};
}

}  // namespace

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d va = broadcast(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<double*>(
        const_cast<cplx*>(y + i)));
    vy = cfma(vy, va, vx);
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i), vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(std::size_t n, cplx alpha, cplx* x) {
  const __m256d va = broadcast(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul(vx, va));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  // conj(x)*y: negate the imaginary lanes of x before the packed product.
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    vx = _mm256_xor_pd(vx, conj_mask);
    acc = cfma(acc, vx, vy);
  }
  cplx s = reduce(acc);
  for (; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double norm_sq(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double s = buf[0] + buf[1] + buf[2] + buf[3];
  for (; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void csr_matvec(std::size_t rows, const std::int64_t* row_ptr,
                const std::int32_t* col_idx, const cplx* values, const cplx* x,
                cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const std::int64_t k0 = row_ptr[r], k1 = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int64_t k = k0;
    for (; k + 2 <= k1; k += 2) {
      __m256d vv = _mm256_loadu_pd(reinterpret_cast<const double*>(values + k));
      // gather the two x entries (scattered columns)
      __m128d x0 =
          _mm_loadu_pd(reinterpret_cast<const double*>(x + col_idx[k]));
      __m128d x1 =
          _mm_loadu_pd(reinterpret_cast<const double*>(x + col_idx[k + 1]));
      __m256d vx = _mm256_set_m128d(x1, x0);
      acc = cfma(acc, vv, vx);
    }
    cplx s = reduce(acc);
    for (; k < k1; ++k) s += values[k] * x[col_idx[k]];
    y[r] = s;
  }
}

void dense_matvec(std::size_t rows, std::size_t cols, const cplx* a,
                  const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* row = a + r * cols;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      __m256d va0 = _mm256_loadu_pd(reinterpret_cast<const double*>(row + c));
      __m256d vx0 = _mm256_loadu_pd(reinterpret_cast<const double*>(x + c));
      acc0 = cfma(acc0, va0, vx0);
      __m256d va1 =
          _mm256_loadu_pd(reinterpret_cast<const double*>(row + c + 2));
      __m256d vx1 =
          _mm256_loadu_pd(reinterpret_cast<const double*>(x + c + 2));
      acc1 = cfma(acc1, va1, vx1);
    }
    for (; c + 2 <= cols; c += 2) {
      __m256d va0 = _mm256_loadu_pd(reinterpret_cast<const double*>(row + c));
      __m256d vx0 = _mm256_loadu_pd(reinterpret_cast<const double*>(x + c));
      acc0 = cfma(acc0, va0, vx0);
    }
    cplx s = reduce(_mm256_add_pd(acc0, acc1));
    for (; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

const Kernels& table() {
  static const Kernels k{axpy, scale, dotc, norm_sq, csr_matvec, dense_matvec};
  return k;
}

}  // namespace kerrsim::kernels::avx2
