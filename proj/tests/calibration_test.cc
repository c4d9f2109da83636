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

#include <gtest/gtest.h>

#include "lnoise/calibration.h"
#include "lnoise/synth.h"
#include "test_util.h"

namespace lnoise {
namespace {

std::vector<LogitSequence> Make(const GapProfile& profile, int count,
                                std::uint64_t master) {
  SynthSpec spec;
  spec.profile = profile;
  std::vector<LogitSequence> out;
  for (int i = 0; i < count; ++i) {
    const std::string id = profile.name + "-" + std::to_string(i);
    out.push_back(GenerateSequence(spec, DeriveSeed(master, profile.name, i), id));
  }
  return out;
}

GridSearchOptions GreedyOptions(std::vector<double> stds, std::vector<double> ths) {
  GridSearchOptions o;
  o.std_grid = std::move(stds);
  o.threshold_grid = std::move(ths);
  o.decoder = DecoderConfig::Greedy();
  return o;
}

TEST(GridSearchTest, SinglePairMatchesDetectBatchSemantics) {
  const auto b = Make(BenignProfile(), 10, 1);
  const auto a = Make(AdversarialProfile(), 10, 1);
  const auto r = GridSearch(b, a, GreedyOptions({3.0}, {60.0}));
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.table[0].counts.total(), 20u);

  // Same counts as thresholding Detect by hand.
  ConfusionCounts want;
  DetectorConfig c;
  c.decoder = DecoderConfig::Greedy();
  for (const auto& s : b) want.Add(Label::kBenign, Detect(s, c).is_adversarial);
  for (const auto& s : a) want.Add(Label::kAdversarial, Detect(s, c).is_adversarial);
  EXPECT_EQ(r.table[0].counts, want);
  if (want.fpr() <= 0.05) {
    ASSERT_TRUE(r.best.has_value());
    EXPECT_EQ(r.best->noise.std, 3.0);
    EXPECT_EQ(r.best->cer_threshold, 60.0);
  }
}

TEST(GridSearchTest, NoFeasiblePairStillFillsTable) {
  const auto b = Make(BenignProfile(), 8, 2);
  const auto a = Make(AdversarialProfile(), 8, 2);
  // Threshold 0 flags everything, so FPR = 1.
  auto opts = GreedyOptions({2.0, 3.0}, {0.0});
  const auto r = GridSearch(b, a, opts);
  EXPECT_FALSE(r.best.has_value());
  ASSERT_EQ(r.table.size(), 2u);
  for (const auto& row : r.table) EXPECT_EQ(row.counts.fpr(), 1.0);
}

TEST(GridSearchTest, TableIsStdMajorInGridOrder) {
  const auto b = Make(BenignProfile(), 4, 3);
  const auto a = Make(AdversarialProfile(), 4, 3);
  const auto r = GridSearch(b, a, GreedyOptions({4.0, 2.0}, {50.0, 10.0, 90.0}));
  ASSERT_EQ(r.table.size(), 6u);
  EXPECT_EQ(r.table[0].std, 4.0);
  EXPECT_EQ(r.table[0].threshold, 50.0);
  EXPECT_EQ(r.table[2].threshold, 90.0);
  EXPECT_EQ(r.table[3].std, 2.0);
}

// Ties: a huge threshold flags nothing (fpr 0) on every std; all rows tie on
// accuracy 0.5 and fpr 0, so the lowest std then lowest threshold wins.
TEST(GridSearchTest, TieBreakPrefersLowerStdThenThreshold) {
  const auto b = Make(BenignProfile(), 4, 4);
  const auto a = Make(AdversarialProfile(), 4, 4);
  const auto r = GridSearch(b, a, GreedyOptions({3.0, 2.0}, {1e6, 1e5}));
  ASSERT_TRUE(r.best.has_value());
  EXPECT_EQ(r.best->noise.std, 2.0);
  EXPECT_EQ(r.best->cer_threshold, 1e5);
  for (const auto& row : r.table) EXPECT_EQ(row.counts.accuracy(), 0.5);
}

TEST(GridSearchTest, BestHasHighestFeasibleAccuracy) {
  const auto b = Make(BenignProfile(), 20, 5);
  const auto a = Make(AdversarialProfile(), 20, 5);
  auto opts = GreedyOptions({2.0, 3.0, 4.0}, ParseGrid("10:130:10"));
  opts.fpr_budget = 0.1;
  const auto r = GridSearch(b, a, opts);
  ASSERT_TRUE(r.best.has_value());
  double best_acc = -1.0;
  for (const auto& row : r.table) {
    if (row.counts.fpr() <= 0.1) best_acc = std::max(best_acc, row.counts.accuracy());
  }
  for (const auto& row : r.table) {
    if (row.std == r.best->noise.std && row.threshold == r.best->cer_threshold) {
      EXPECT_EQ(row.counts.accuracy(), best_acc);
    }
  }
  EXPECT_EQ(r.best->decoder, DecoderConfig::Greedy());
}

TEST(GridSearchTest, CalibratedPairGeneralizesToHeldOutData) {
  const auto b = Make(BenignProfile(), 60, 6);
  const auto a = Make(AdversarialProfile(), 60, 6);
  const auto r = GridSearch(b, a, GreedyOptions({2, 3, 4, 5}, ParseGrid("10:130:10")));
  ASSERT_TRUE(r.best.has_value());

  const auto hb = Make(BenignProfile(), 100, 60);
  const auto ha = Make(AdversarialProfile(), 100, 60);
  ConfusionCounts held;
  for (const auto& s : hb) held.Add(Label::kBenign, Detect(s, *r.best).is_adversarial);
  for (const auto& s : ha) held.Add(Label::kAdversarial, Detect(s, *r.best).is_adversarial);
  EXPECT_GE(held.accuracy(), 0.95);
}

TEST(GridSearchTest, JobCountDoesNotChangeTable) {
  const auto b = Make(BenignProfile(), 6, 7);
  const auto a = Make(AdversarialProfile(), 6, 7);
  auto opts = GreedyOptions({2, 3}, {30, 60});
  const auto one = GridSearch(b, a, opts);
  opts.jobs = 4;
  const auto four = GridSearch(b, a, opts);
  ASSERT_EQ(one.table.size(), four.table.size());
  for (std::size_t i = 0; i < one.table.size(); ++i) {
    EXPECT_EQ(one.table[i].counts, four.table[i].counts);
  }
}

TEST(GridSearchTest, RejectsEmptyGrid) {
  const auto b = Make(BenignProfile(), 2, 8);
  const auto a = Make(AdversarialProfile(), 2, 8);
  EXPECT_THROW(GridSearch(b, a, GreedyOptions({}, {60})), Error);
  EXPECT_THROW(GridSearch(b, a, GreedyOptions({3}, {})), Error);
}

TEST(ParseGridTest, RangeAndList) {
  EXPECT_EQ(ParseGrid("10:130:10"),
            (std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120}));
  EXPECT_EQ(ParseGrid("2,3,4,5"), (std::vector<double>{2, 3, 4, 5}));
  EXPECT_EQ(ParseGrid("3"), std::vector<double>{3});
  EXPECT_EQ(ParseGrid("0:1:0.25"), (std::vector<double>{0, 0.25, 0.5, 0.75}));
}

TEST(ParseGridTest, Errors) {
  EXPECT_THROW(ParseGrid(""), Error);
  EXPECT_THROW(ParseGrid("1:5:0"), Error);
  EXPECT_THROW(ParseGrid("1:5"), Error);
  EXPECT_THROW(ParseGrid("a,b"), Error);
  EXPECT_THROW(ParseGrid("1,,2"), Error);
}

}  // namespace
}  // namespace lnoise
