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

namespace kerrsim::kernels {

bool cpu_supports_avx2() {
#if KERRSIM_HAS_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels& active() {
#if KERRSIM_HAS_AVX2
  static const Kernels& k = cpu_supports_avx2() ? avx2::table() : scalar::table();
#else
  static const Kernels& k = scalar::table();
#endif
  return k;
}

std::string active_name() {
#if KERRSIM_HAS_AVX2
  if (cpu_supports_avx2()) return "avx2";
#endif
  return "scalar";
}

}  // namespace kerrsim::kernels
