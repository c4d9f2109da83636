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

#include "lnoise/kernels.h"

namespace lnoise::kernels {
namespace {

void AddScaled(std::span<const double> base, std::span<const double> z,
               double scale, std::span<double> out) {
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double step = scale * z[i];
    out[i] = base[i] + step;
  }
}

std::size_t Argmax(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < row.size(); ++i) {
    if (row[i] > row[best]) best = i;
  }
  return best;
}

double MaxValue(std::span<const double> row) { return row[Argmax(row)]; }

void ArgmaxRows(std::span<const double> matrix, std::size_t cols,
                std::span<std::size_t> out) {
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = Argmax(matrix.subspan(t * cols, cols));
  }
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table{"scalar", &AddScaled, &Argmax, &MaxValue,
                                 &ArgmaxRows};
  return table;
}

}  // namespace lnoise::kernels
