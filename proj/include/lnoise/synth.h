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

// Synthetic logit sequences with controlled top-k gap statistics.
//
// Each frame has one top token at kAnchorScore. Ranks 2..(competitor_ranks
// + 1) go to distinct non-blank tokens other than the top one, at
//   anchor - g_2, anchor - g_3, ...
// with g_2 ~ Normal(gap_mean_k2, gap_std_k2) truncated below at `floor` and
// g_k = g_{k-1} + Exponential(mean = extra_gap_per_rank). Every other token
// sits at anchor - max(20, g_last + 5). The sequence of top tokens is a CTC
// alignment of the target text, so greedy decoding returns it exactly.

#ifndef LNOISE_SYNTH_H_
#define LNOISE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "lnoise/core.h"
#include "lnoise/logit_io.h"

namespace lnoise {

inline constexpr double kAnchorScore = 10.0;
inline constexpr double kFillerGap = 20.0;

struct GapProfile {
  std::string name = "custom";  // "benign", "adversarial" or anything else
  double gap_mean_k2 = 5.0;
  double gap_std_k2 = 1.0;
  double extra_gap_per_rank = 1.0;
  double floor = 0.5;

  void Validate() const;
};

/// Normal(9, 3) truncated at 1.0, +2.5 per extra rank.
GapProfile BenignProfile();
/// Normal(5, 1) truncated at 0.5, +1.0 per extra rank.
GapProfile AdversarialProfile();
/// "benign" / "adversarial"; anything else throws kInvalidArgument.
GapProfile ProfileByName(std::string_view name);

/// A short command phrase (19 characters), typical of attack targets.
inline constexpr std::string_view kDefaultSynthText =
    "turn off the lights";

struct SynthSpec {
  GapProfile profile;
  std::size_t frames = 100;
  Alphabet alphabet = DefaultEnglishAlphabet();
  std::string target_text{kDefaultSynthText};
  double blank_run_fraction = 0.3;
  std::size_t competitor_ranks = 4;
};

/// Throws kTextTooLong when no CTC alignment of the text fits in `frames`,
/// kInvalidArgument for text outside the alphabet or a bad profile.
LogitSequence GenerateSequence(const SynthSpec& spec, std::uint64_t seed,
                               std::string id = {});

/// Writes `count` files named "<profile>-NNNNN.json" plus
/// "<profile>.jsonl" into `out_dir`. Sample i uses
/// DeriveSeed(master_seed, profile.name, i).
DatasetManifest GenerateDataset(const SynthSpec& spec, std::size_t count,
                                std::uint64_t master_seed,
                                const std::filesystem::path& out_dir,
                                std::size_t jobs = 1);

}  // namespace lnoise

#endif  // LNOISE_SYNTH_H_
