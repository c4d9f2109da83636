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

#include "lnoise/inversion.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "lnoise/kernels.h"

namespace lnoise {

namespace {

void CheckStd(const NoiseSpec& noise) {
  if (!(noise.std > 0.0) || !std::isfinite(noise.std)) {
    throw Error(ErrorKind::kNonPositiveStd,
                fmt::format("noise std must be > 0, got {}", noise.std));
  }
}

}  // namespace

double FrameGap(std::span<const double> frame, int k) {
  if (k < 2 || static_cast<std::size_t>(k) > frame.size()) {
    throw Error(ErrorKind::kRankOutOfRange,
                fmt::format("rank {} outside [2, {}]", k, frame.size()));
  }
  std::vector<double> sorted(frame.begin(), frame.end());
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(),
                   std::greater<>());
  const double top = *std::max_element(sorted.begin(), sorted.begin() + k);
  return top - sorted[k - 1];
}

GapDistribution ComputeGapDistribution(std::span<const LogitSequence> seqs,
                                       int k, bool skip_blank_frames,
                                       std::string source) {
  GapDistribution out;
  out.k = k;
  out.source = std::move(source);
  for (const auto& seq : seqs) {
    const std::size_t blank = seq.alphabet().blank_index();
    for (std::size_t t = 0; t < seq.num_frames(); ++t) {
      const auto frame = seq.frame(t);
      if (skip_blank_frames && kernels::Active().argmax(frame) == blank) {
        continue;
      }
      out.samples.push_back(FrameGap(frame, k));
    }
  }
  if (out.samples.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no frames to take gaps from");
  }
  return out;
}

double GapInversionProb(double gap, double std) {
  return 0.5 * std::erfc(gap / (2.0 * std));
}

double PairwiseInversionProb(const GapDistribution& gaps,
                             const NoiseSpec& noise) {
  CheckStd(noise);
  if (gaps.samples.empty()) throw Error(ErrorKind::kEmptyInput, "empty gap set");
  double sum = 0.0;
  for (double c : gaps.samples) sum += GapInversionProb(c, noise.std);
  return sum / static_cast<double>(gaps.samples.size());
}

MonteCarloEstimate PairwiseInversionProbMc(const GapDistribution& gaps,
                                           const NoiseSpec& noise,
                                           std::uint64_t trials,
                                           std::uint64_t seed) {
  if (gaps.samples.empty()) throw Error(ErrorKind::kEmptyInput, "empty gap set");
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  if (noise.std < 0.0) CheckStd(noise);

  GaussianSource rng(seed);
  const std::size_t m = gaps.samples.size();
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    // Modulo bias is below 2^-40 for any realistic sample count.
    const double c = gaps.samples[m == 1 ? 0 : rng.NextBits() % m];
    const double e_top = noise.std * rng.Next();
    const double e_rank_k = noise.std * rng.Next();
    if (e_rank_k - e_top > c) ++hits;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.probability = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.probability * (1.0 - est.probability) /
                            static_cast<double>(trials));
  return est;
}

double TotalInversionProb(std::span<const double> pairwise) {
  double total = 0.0;
  double largest = 0.0;
  for (double p : pairwise) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::kOutOfRange,
                  fmt::format("probability {} outside [0, 1]", p));
    }
    // Union recurrence; equals 1 - prod(1 - p) without cancellation.
    total += p * (1.0 - total);
    largest = std::max(largest, p);
  }
  return std::max(total, largest);
}

WaveGaps ComputeWaveGaps(std::span<const LogitSequence> seqs, int k_max,
                         bool skip_blank_frames, std::string wave_type) {
  if (k_max < 2) throw Error(ErrorKind::kRankOutOfRange, "k_max must be >= 2");
  WaveGaps out;
  out.wave_type = std::move(wave_type);
  for (int k = 2; k <= k_max; ++k) {
    out.by_rank.push_back(
        ComputeGapDistribution(seqs, k, skip_blank_frames, out.wave_type));
  }
  return out;
}

std::vector<PinvRow> PinvCurve(std::span<const WaveGaps> waves,
                               std::span<const double> std_grid, int k_max) {
  if (waves.empty() || std_grid.empty()) {
    throw Error(ErrorKind::kEmptyInput, "std grid and wave list must be non-empty");
  }
  if (k_max < 2) throw Error(ErrorKind::kRankOutOfRange, "k_max must be >= 2");
  for (const auto& w : waves) {
    if (w.by_rank.size() < static_cast<std::size_t>(k_max - 1)) {
      throw Error(ErrorKind::kRankOutOfRange,
                  fmt::format("wave '{}' has gaps up to k={}, need {}",
                              w.wave_type, w.by_rank.size() + 1, k_max));
    }
  }
  std::vector<PinvRow> rows;
  for (double s : std_grid) {
    const NoiseSpec noise = NoiseSpec::Gaussian(s);
    for (const auto& w : waves) {
      std::vector<double> pairwise;
      for (int k = 2; k <= k_max; ++k) {
        pairwise.push_back(PairwiseInversionProb(w.by_rank[k - 2], noise));
      }
      rows.push_back({s, w.wave_type, TotalInversionProb(pairwise)});
    }
  }
  return rows;
}

std::vector<HistogramBin> GapHistogram(const GapDistribution& gaps,
                                       double bin_width) {
  if (gaps.samples.empty()) throw Error(ErrorKind::kEmptyInput, "empty gap set");
  if (!(bin_width > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "bin width must be > 0");
  }
  const double hi = *std::max_element(gaps.samples.begin(), gaps.samples.end());
  const auto bins = static_cast<std::size_t>(std::floor(hi / bin_width)) + 1;
  std::vector<std::size_t> counts(bins, 0);
  for (double c : gaps.samples) {
    auto b = static_cast<std::size_t>(std::floor(std::max(c, 0.0) / bin_width));
    ++counts[std::min(b, bins - 1)];
  }
  const double norm = static_cast<double>(gaps.samples.size()) * bin_width;
  std::vector<HistogramBin> out;
  out.reserve(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.push_back({static_cast<double>(b) * bin_width,
                   static_cast<double>(b + 1) * bin_width,
                   static_cast<double>(counts[b]) / norm});
  }
  return out;
}

}  // namespace lnoise
