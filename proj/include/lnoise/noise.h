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

// Reproducible Gaussian logit noising.
//
// Seeds: DeriveSeed(master, sample_id, index) is
//   h = SplitMix64(master)
//   h = SplitMix64(h ^ Fnv1a64(sample_id))
//   h = SplitMix64(h ^ (index * 0x9E3779B97F4A7C15 + 1))
// where SplitMix64 is the finalizer of Steele et al.'s SplitMix generator.
// Each stream then feeds std::mt19937_64; normals come from the Box-Muller
// transform on 53-bit uniforms, using both outputs of each pair. Results
// are bit-reproducible for a given seed within one build.

#ifndef LNOISE_NOISE_H_
#define LNOISE_NOISE_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "lnoise/core.h"

namespace lnoise {

struct NoiseSpec {
  double mean = 0.0;  // always zero
  double std = 0.0;

  static NoiseSpec Gaussian(double std) { return {0.0, std}; }
  bool operator==(const NoiseSpec&) const = default;
};

struct SeedSpec {
  std::uint64_t master_seed = 0;
  bool operator==(const SeedSpec&) const = default;
};

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t Fnv1a64(std::string_view bytes);
std::uint64_t DeriveSeed(std::uint64_t master_seed, std::string_view sample_id,
                         std::uint64_t instance_index);

/// Standard-normal stream.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double Next();
  void Fill(std::span<double> out);
  /// Uniform in [0, 1) with 53 random bits.
  double NextUniform();
  std::uint64_t NextBits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Adds an independent Normal(0, std^2) draw to every score. std == 0
/// returns an exact copy; negative std throws kNonPositiveStd.
LogitSequence AddNoise(const LogitSequence& seq, const NoiseSpec& noise,
                       std::uint64_t seed);

/// n noised copies; copy i uses DeriveSeed(master, seq.id(), i).
std::vector<LogitSequence> NoisedInstances(const LogitSequence& seq,
                                           std::size_t n,
                                           const NoiseSpec& noise,
                                           const SeedSpec& seeds);

}  // namespace lnoise

#endif  // LNOISE_NOISE_H_
