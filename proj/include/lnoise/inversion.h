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

// Logit-gap statistics and the probability that Gaussian noise inverts the
// order of the top score and the k-th score.
//
// For a frame with top score L1 and k-th score Lk, gap c = L1 - Lk >= 0.
// With i.i.d. Normal(0, s^2) noise on both, the difference of the two noise
// terms is Normal(0, 2 s^2), so
//   P(inverted | c) = Phi(-c / (s * sqrt 2)) = erfc(c / (2 s)) / 2.
// The pairwise probability for a wave type is the mean of that over the
// empirical gap samples; ranks 2..k_max combine as 1 - prod(1 - p_k).

#ifndef LNOISE_INVERSION_H_
#define LNOISE_INVERSION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lnoise/core.h"
#include "lnoise/noise.h"

namespace lnoise {

struct GapDistribution {
  int k = 2;
  std::vector<double> samples;  // one per frame, unordered
  std::string source;
};

/// Largest score minus the k-th largest. 2 <= k <= V else kRankOutOfRange.
double FrameGap(std::span<const double> frame, int k);

/// 1-k gaps over every frame of every sequence. With `skip_blank_frames`,
/// frames whose argmax is the blank token are left out. No frames at all
/// throws kEmptyInput.
GapDistribution ComputeGapDistribution(std::span<const LogitSequence> seqs,
                                       int k, bool skip_blank_frames,
                                       std::string source = {});

/// Closed-form inversion probability for one gap; result in (0, 0.5].
double GapInversionProb(double gap, double std);

/// Mean of GapInversionProb over the samples. Throws kEmptyInput or
/// kNonPositiveStd.
double PairwiseInversionProb(const GapDistribution& gaps, const NoiseSpec& noise);

struct MonteCarloEstimate {
  double probability = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / trials)
  std::uint64_t trials = 0;
};

/// Direct simulation: per trial pick a gap uniformly, draw two independent
/// Normal(0, std^2) values e1, e2 and count e2 - e1 > gap.
MonteCarloEstimate PairwiseInversionProbMc(const GapDistribution& gaps,
                                           const NoiseSpec& noise,
                                           std::uint64_t trials,
                                           std::uint64_t seed);

/// 1 - prod(1 - p). Each p must lie in [0, 1] (kOutOfRange otherwise).
double TotalInversionProb(std::span<const double> pairwise);

/// Gap distributions for k = 2..k_max for one wave type.
struct WaveGaps {
  std::string wave_type;
  std::vector<GapDistribution> by_rank;  // by_rank[i].k == i + 2
};

WaveGaps ComputeWaveGaps(std::span<const LogitSequence> seqs, int k_max,
                         bool skip_blank_frames, std::string wave_type);

struct PinvRow {
  double std;
  std::string wave_type;
  double p_total;
};

/// One row per (std, wave type), std-major in grid order.
std::vector<PinvRow> PinvCurve(std::span<const WaveGaps> waves,
                               std::span<const double> std_grid, int k_max);

struct HistogramBin {
  double left;
  double right;
  double density;  // count / (samples * width)
};

inline constexpr double kHistogramBinWidth = 0.25;

/// Bins [0, w), [w, 2w), ... up to the largest sample.
std::vector<HistogramBin> GapHistogram(const GapDistribution& gaps,
                                       double bin_width = kHistogramBinWidth);

}  // namespace lnoise

#endif  // LNOISE_INVERSION_H_
