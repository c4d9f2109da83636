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

#include "lnoise/noise.h"

#include <cmath>
#include <numbers>

#include "lnoise/kernels.h"

namespace lnoise {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t DeriveSeed(std::uint64_t master_seed, std::string_view sample_id,
                         std::uint64_t instance_index) {
  std::uint64_t h = SplitMix64(master_seed);
  h = SplitMix64(h ^ Fnv1a64(sample_id));
  return SplitMix64(h ^ (instance_index * 0x9E3779B97F4A7C15ULL + 1));
}

double GaussianSource::NextUniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::Next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - NextUniform();
  const double u2 = NextUniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void GaussianSource::Fill(std::span<double> out) {
  for (double& x : out) x = Next();
}

LogitSequence AddNoise(const LogitSequence& seq, const NoiseSpec& noise,
                       std::uint64_t seed) {
  if (noise.std < 0.0 || !std::isfinite(noise.std)) {
    throw Error(ErrorKind::kNonPositiveStd, "noise std must be >= 0");
  }
  const auto base = seq.scores();
  if (noise.std == 0.0) return seq;

  std::vector<double> z(base.size());
  GaussianSource(seed).Fill(z);
  std::vector<double> out(base.size());
  kernels::Active().add_scaled(base, z, noise.std, out);
  return seq.WithScores(std::move(out));
}

std::vector<LogitSequence> NoisedInstances(const LogitSequence& seq,
                                           std::size_t n,
                                           const NoiseSpec& noise,
                                           const SeedSpec& seeds) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "need at least 1 instance");
  std::vector<LogitSequence> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(AddNoise(seq, noise, DeriveSeed(seeds.master_seed, seq.id(), i)));
  }
  return out;
}

}  // namespace lnoise
