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

// Compiled with -mavx2 only. Nothing outside this file may call these
// functions unless the CPU has been checked for AVX2 support.

#include <immintrin.h>

#include "lnoise/kernels.h"

namespace lnoise::kernels {
namespace {

void AddScaled(std::span<const double> base, std::span<const double> z,
               double scale, std::span<double> out) {
  const std::size_t n = base.size();
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d b = _mm256_loadu_pd(base.data() + i);
    const __m256d zz = _mm256_loadu_pd(z.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(b, _mm256_mul_pd(s, zz)));
  }
  for (; i < n; ++i) {
    const double step = scale * z[i];
    out[i] = base[i] + step;
  }
}

double MaxValue(std::span<const double> row) {
  const std::size_t n = row.size();
  const double* p = row.data();
  double m = p[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(p);
    for (i = 4; i + 4 <= n; i += 4) {
      acc = _mm256_max_pd(acc, _mm256_loadu_pd(p + i));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
    m = _mm_cvtsd_f64(m1);
  }
  for (; i < n; ++i) {
    if (p[i] > m) m = p[i];
  }
  return m;
}

// Two passes: vector max, then the first lane equal to it. Equality makes
// -0.0 and +0.0 interchangeable, matching the scalar `>` scan.
std::size_t Argmax(std::span<const double> row) {
  const double m = MaxValue(row);
  const std::size_t n = row.size();
  const double* p = row.data();
  const __m256d target = _mm256_set1_pd(m);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(
        _mm256_cmp_pd(_mm256_loadu_pd(p + i), target, _CMP_EQ_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; i < n; ++i) {
    if (p[i] == m) return i;
  }
  return 0;
}

void ArgmaxRows(std::span<const double> matrix, std::size_t cols,
                std::span<std::size_t> out) {
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = Argmax(matrix.subspan(t * cols, cols));
  }
}

}  // namespace

namespace detail {
const KernelTable* Avx2TableIfBuilt() {
  static const KernelTable table{"avx2", &AddScaled, &Argmax, &MaxValue,
                                 &ArgmaxRows};
  return &table;
}
}  // namespace detail

}  // namespace lnoise::kernels
