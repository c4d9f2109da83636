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

#ifndef LNOISE_CTC_DECODER_H_
#define LNOISE_CTC_DECODER_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lnoise/core.h"

namespace lnoise {

enum class DecoderKind { kGreedy, kBeam };

struct DecoderConfig {
  DecoderKind kind = DecoderKind::kBeam;
  std::size_t beam_width = 32;

  static DecoderConfig Greedy() { return {DecoderKind::kGreedy, 1}; }
  static DecoderConfig Beam(std::size_t width) {
    return {DecoderKind::kBeam, width};
  }
  bool operator==(const DecoderConfig&) const = default;
};

std::string_view DecoderKindName(DecoderKind kind);
/// "greedy" or "beam"; anything else throws kInvalidArgument.
DecoderKind ParseDecoderKind(std::string_view name);

/// Numerically stable log-softmax of one frame.
std::vector<double> LogSoftmaxFrame(std::span<const double> frame);

/// Best-path decoding: per-frame argmax (lowest index on ties), collapse
/// repeats, drop blanks.
Transcription GreedyDecode(const LogitSequence& seq);

/// CTC prefix beam search over per-frame log-softmax. No language model.
/// Prefixes that collapse to the same label string are merged. Equal
/// scores are ordered by text, lexicographically smallest first.
Transcription BeamSearchDecode(const LogitSequence& seq, std::size_t beam_width);

Transcription Decode(const LogitSequence& seq, const DecoderConfig& config);

}  // namespace lnoise

#endif  // LNOISE_CTC_DECODER_H_
