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

#include <cmath>
#include <random>
#include <unordered_set>

#include <gtest/gtest.h>

#include "lnoise/noise.h"
#include "test_util.h"

namespace lnoise {
namespace {

using testing::RandomSequence;
using testing::SmallAlphabet;

TEST(SeedTest, DeriveSeedDeterministic) {
  EXPECT_EQ(DeriveSeed(42, "sample", 3), DeriveSeed(42, "sample", 3));
  EXPECT_NE(DeriveSeed(42, "sample", 3), DeriveSeed(42, "sample", 4));
  EXPECT_NE(DeriveSeed(42, "sample", 3), DeriveSeed(43, "sample", 3));
  EXPECT_NE(DeriveSeed(42, "sample", 3), DeriveSeed(42, "sampl3", 3));
}

TEST(SeedTest, KnownVectors) {
  // FNV-1a 64 reference values.
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  // SplitMix64 first output for state 0 advances by the golden gamma first.
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
}

TEST(SeedTest, NoCollisionsOverAMillionDerivations) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1'000'000);
  for (int s = 0; s < 1000; ++s) {
    const std::string id = "utt-" + std::to_string(s);
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(DeriveSeed(7, id, i));
  }
  EXPECT_EQ(seen.size(), 1'000'000u);
}

TEST(GaussianSourceTest, SameSeedSameStream) {
  GaussianSource a(99), b(99);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.Next(), b.Next());
}

TEST(GaussianSourceTest, UniformInUnitInterval) {
  GaussianSource g(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.NextUniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(GaussianSourceTest, MomentsMatchStandardNormal) {
  GaussianSource g(2026);
  const int n = 400000;
  double sum = 0.0, sq = 0.0, cube = 0.0, quad = 0.0;
  int tail = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.Next();
    sum += x;
    sq += x * x;
    cube += x * x * x;
    quad += x * x * x * x;
    if (x > 1.959963984540054) ++tail;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
  EXPECT_NEAR(cube / n, 0.0, 0.03);
  EXPECT_NEAR(quad / n, 3.0, 0.05);
  EXPECT_NEAR(static_cast<double>(tail) / n, 0.025, 0.0015);
}

TEST(AddNoiseTest, ZeroStdIsExactCopy) {
  std::mt19937_64 rng(1);
  const auto seq = RandomSequence(rng, 20, SmallAlphabet(6));
  EXPECT_EQ(AddNoise(seq, NoiseSpec::Gaussian(0.0), 123), seq);
}

TEST(AddNoiseTest, NegativeStdThrows) {
  std::mt19937_64 rng(1);
  const auto seq = RandomSequence(rng, 2, SmallAlphabet(3));
  try {
    AddNoise(seq, NoiseSpec::Gaussian(-1.0), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonPositiveStd);
  }
}

TEST(AddNoiseTest, ResidualsHaveRequestedStd) {
  // 100000 scalars = 4000 frames of 25 tokens.
  const auto seq = LogitSequence("big", SmallAlphabet(25),
                                 std::vector<double>(100000, 1.5));
  const auto noised = AddNoise(seq, NoiseSpec::Gaussian(3.0), 31337);
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < seq.scores().size(); ++i) {
    const double r = noised.scores()[i] - seq.scores()[i];
    sum += r;
    sq += r * r;
  }
  const double n = static_cast<double>(seq.scores().size());
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 3.0, 0.05);
}

TEST(AddNoiseTest, ReproducibleAndMetadataPreserved) {
  std::mt19937_64 rng(2);
  const auto base = RandomSequence(rng, 10, SmallAlphabet(5));
  const LogitSequence seq("meta", base.alphabet(),
                          {base.scores().begin(), base.scores().end()},
                          Label::kBenign, std::string("abc"));
  const auto a = AddNoise(seq, NoiseSpec::Gaussian(2.0), 77);
  const auto b = AddNoise(seq, NoiseSpec::Gaussian(2.0), 77);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.id(), "meta");
  EXPECT_EQ(a.label(), std::optional<Label>(Label::kBenign));
  EXPECT_EQ(a.transcript(), std::optional<std::string>("abc"));
  EXPECT_EQ(a.num_frames(), seq.num_frames());
  EXPECT_NE(a, seq);
}

TEST(NoisedInstancesTest, DistinctAndSeededPerIndex) {
  std::mt19937_64 rng(3);
  const auto seq = RandomSequence(rng, 10, SmallAlphabet(5), 2.0, "inst");
  const SeedSpec seeds{2024};
  const auto copies = NoisedInstances(seq, 4, NoiseSpec::Gaussian(3.0), seeds);
  ASSERT_EQ(copies.size(), 4u);
  for (std::size_t i = 0; i < copies.size(); ++i) {
    EXPECT_EQ(copies[i],
              AddNoise(seq, NoiseSpec::Gaussian(3.0), DeriveSeed(2024, "inst", i)));
    for (std::size_t j = 0; j < i; ++j) EXPECT_NE(copies[i], copies[j]);
  }
  EXPECT_EQ(copies, NoisedInstances(seq, 4, NoiseSpec::Gaussian(3.0), seeds));
}

}  // namespace
}  // namespace lnoise
