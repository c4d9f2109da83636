// Copyright 2026 The lnoise Authors. All Rights Reserved.
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

#include <cstdlib>
#include <string_view>

#include "lnoise/kernels.h"

namespace lnoise::kernels {

#ifndef LNOISE_HAVE_AVX2
namespace detail {
const KernelTable* Avx2TableIfBuilt() { return nullptr; }
}  // namespace detail
#endif

const KernelTable* Avx2Kernels() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool cpu_ok = __builtin_cpu_supports("avx2");
  if (!cpu_ok) return nullptr;
  return detail::Avx2TableIfBuilt();
#else
  return nullptr;
#endif
}

const KernelTable& Active() {
  static const KernelTable* const table = [] {
    const KernelTable* avx2 = Avx2Kernels();
    if (const char* env = std::getenv("LNOISE_KERNELS")) {
      if (std::string_view(env) == "scalar") return &ScalarKernels();
      if (std::string_view(env) == "avx2" && avx2 != nullptr) return avx2;
    }
    return avx2 != nullptr ? avx2 : &ScalarKernels();
  }();
  return *table;
}

}  // namespace lnoise::kernels
