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

// Inner-loop kernels over contiguous score rows.
//
// Every kernel has a scalar reference implementation and, where the build
// and CPU allow, an AVX2 variant. Variants must produce bit-identical
// results to the scalar reference (max_value may differ only in the sign
// of a zero maximum); the AVX2 translation unit is compiled without FMA
// contraction for that reason.
//
// The active table is picked once, on first use: AVX2 if the CPU reports
// it, otherwise scalar. The LNOISE_KERNELS environment variable
// ("scalar" or "avx2") overrides the choice.

#ifndef LNOISE_KERNELS_H_
#define LNOISE_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace lnoise::kernels {

struct KernelTable {
  std::string_view name;
  /// out[i] = base[i] + scale * z[i]. All spans have equal length.
  void (*add_scaled)(std::span<const double> base, std::span<const double> z,
                     double scale, std::span<double> out);
  /// Index of the largest element; lowest index wins ties. Row non-empty.
  std::size_t (*argmax)(std::span<const double> row);
  /// Largest element. Row non-empty.
  double (*max_value)(std::span<const double> row);
  /// out[t] = argmax of row t for a row-major matrix of `cols` columns.
  void (*argmax_rows)(std::span<const double> matrix, std::size_t cols,
                      std::span<std::size_t> out);
};

const KernelTable& ScalarKernels();
/// nullptr when the AVX2 variants were not built or the CPU lacks AVX2.
const KernelTable* Avx2Kernels();

const KernelTable& Active();

namespace detail {
const KernelTable* Avx2TableIfBuilt();
}  // namespace detail

}  // namespace lnoise::kernels

#endif  // LNOISE_KERNELS_H_
