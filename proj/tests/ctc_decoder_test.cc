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
#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "brute_force_ctc.h"
#include "lnoise/ctc_decoder.h"
#include "test_util.h"

namespace lnoise {
namespace {

using testing::PathSequence;
using testing::RandomSequence;
using testing::SmallAlphabet;

// Alphabet {a, b, -}: a=0, b=1, blank=2.
const Alphabet& Abc() {
  static const Alphabet a({"a", "b", "-"}, 2);
  return a;
}

TEST(GreedyDecodeTest, CollapsesRepeatsAndDropsBlanks) {
  EXPECT_EQ(GreedyDecode(PathSequence({0, 0, 2, 1}, Abc())).text, "ab");
}

TEST(GreedyDecodeTest, BlankSeparatesRepeats) {
  EXPECT_EQ(GreedyDecode(PathSequence({0, 2, 2, 0}, Abc())).text, "aa");
}

TEST(GreedyDecodeTest, AllBlankIsEmpty) {
  EXPECT_EQ(GreedyDecode(PathSequence({2, 2, 2}, Abc())).text, "");
}

TEST(GreedyDecodeTest, TiesGoToLowestIndex) {
  const auto seq = LogitSequence::FromRows("t", Abc(), {{1.0, 1.0, 1.0}});
  EXPECT_EQ(GreedyDecode(seq).text, "a");
}

TEST(GreedyDecodeTest, BlankAtNonTerminalIndex) {
  const Alphabet a({"-", "x", "y"}, 0);
  EXPECT_EQ(GreedyDecode(PathSequence({1, 0, 1, 2, 2}, a)).text, "xxy");
}

// Adding a constant or scaling by a positive factor per frame never changes
// the best path.
TEST(GreedyDecodeTest, InvariantUnderPerFrameMonotoneMaps) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto seq = RandomSequence(rng, 12, SmallAlphabet(5));
    std::vector<double> mapped(seq.scores().begin(), seq.scores().end());
    for (std::size_t t = 0; t < seq.num_frames(); ++t) {
      const double s = scale(rng);
      const double c = shift(rng);
      for (std::size_t v = 0; v < seq.vocab_size(); ++v) {
        double& x = mapped[t * seq.vocab_size() + v];
        x = trial % 2 ? x * s : x + c;
      }
    }
    EXPECT_EQ(GreedyDecode(seq).text, GreedyDecode(seq.WithScores(mapped)).text);
  }
}

TEST(LogSoftmaxTest, Symmetric) {
  const auto out = LogSoftmaxFrame(std::vector<double>{0.0, 0.0});
  EXPECT_DOUBLE_EQ(out[0], std::log(0.5));
  EXPECT_DOUBLE_EQ(out[1], std::log(0.5));
}

TEST(LogSoftmaxTest, LargeScoresDoNotOverflow) {
  const auto out = LogSoftmaxFrame(std::vector<double>{1000.0, 0.0});
  EXPECT_TRUE(std::isfinite(out[0]));
  EXPECT_NEAR(out[0], 0.0, 1e-12);
  EXPECT_NEAR(out[1], -1000.0, 1e-9);
}

TEST(LogSoftmaxTest, ExponentiatedSumsToOne) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d(0.0, 30.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> frame(1 + i % 40);
    for (double& x : frame) x = d(rng);
    const auto out = LogSoftmaxFrame(frame);
    double sum = 0.0;
    for (double x : out) sum += std::exp(x);
    ASSERT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(BeamSearchTest, WidthOneMatchesGreedyOnOneHot) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> tok(0, 3);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::size_t> path(1 + i % 15);
    for (auto& p : path) p = tok(rng);
    const auto seq = PathSequence(path, SmallAlphabet(4));
    EXPECT_EQ(BeamSearchDecode(seq, 1).text, GreedyDecode(seq).text);
  }
}

// Width 1 keeps a single prefix but still merges blank/non-blank endings,
// so it only coincides with best path when frames are confident.
TEST(BeamSearchTest, WidthOneMatchesGreedyOnPeakedLogits) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> tok(0, 5);
  std::normal_distribution<double> jitter(0.0, 0.5);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::size_t> path(1 + i % 20);
    for (auto& p : path) p = tok(rng);
    const auto base = PathSequence(path, SmallAlphabet(6), 12.0);
    std::vector<double> scores(base.scores().begin(), base.scores().end());
    for (double& x : scores) x += jitter(rng);
    const auto seq = base.WithScores(scores);
    EXPECT_EQ(BeamSearchDecode(seq, 1).text, GreedyDecode(seq).text);
  }
}

TEST(BeamSearchTest, UniformLogitsTieBreaksToEmpty) {
  // P("") = P("a") = 0.5 for one uniform frame over {a, -}.
  const auto seq = LogitSequence::FromRows("u", Alphabet({"a", "-"}, 1), {{0.0, 0.0}});
  EXPECT_EQ(BeamSearchDecode(seq, 8).text, "");
  EXPECT_EQ(BeamSearchDecode(seq, 1).text, "");
}

TEST(BeamSearchTest, MergesAlignmentsThatGreedyMisses) {
  // Best path is "-" twice (0.6^2 = 0.36) but "a" collects
  // 0.4*0.4 + 0.4*0.6 + 0.6*0.4 = 0.64.
  const double la = std::log(0.4);
  const double lb = std::log(0.6);
  const auto seq = LogitSequence::FromRows("m", Alphabet({"a", "-"}, 1),
                                           {{la, lb}, {la, lb}});
  EXPECT_EQ(GreedyDecode(seq).text, "");
  EXPECT_EQ(BeamSearchDecode(seq, 4).text, "a");
}

TEST(BeamSearchTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> frames(1, 6);
  std::uniform_int_distribution<int> vocab(2, 4);
  for (int i = 0; i < 60; ++i) {
    const auto seq = RandomSequence(rng, frames(rng), SmallAlphabet(vocab(rng)));
    ASSERT_EQ(BeamSearchDecode(seq, 10000).text, testing::BruteForceCtcBest(seq))
        << "instance " << i;
  }
}

TEST(BeamSearchTest, NeverEmitsBlank) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto seq = RandomSequence(rng, 30, SmallAlphabet(5), 4.0);
    EXPECT_EQ(BeamSearchDecode(seq, 8).text.find('-'), std::string::npos);
    EXPECT_EQ(GreedyDecode(seq).text.find('-'), std::string::npos);
  }
}

TEST(BeamSearchTest, RejectsZeroWidth) {
  EXPECT_THROW(BeamSearchDecode(PathSequence({0}, Abc()), 0), Error);
}

TEST(DecoderConfigTest, ParseKind) {
  EXPECT_EQ(ParseDecoderKind("greedy"), DecoderKind::kGreedy);
  EXPECT_EQ(ParseDecoderKind("beam"), DecoderKind::kBeam);
  EXPECT_THROW(ParseDecoderKind("viterbi"), Error);
}

}  // namespace
}  // namespace lnoise
