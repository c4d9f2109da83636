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

// Character-level edit distance and character error rate. Strings are
// UTF-8; comparison is per code point and spaces count as characters.

#ifndef LNOISE_EDIT_DISTANCE_H_
#define LNOISE_EDIT_DISTANCE_H_

#include <cstddef>
#include <string_view>

namespace lnoise {

struct EditBreakdown {
  std::size_t insertions = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t distance = 0;  // insertions + substitutions + deletions
  std::size_t ref_len = 0;
  bool operator==(const EditBreakdown&) const = default;
};

/// Full-matrix Levenshtein with traceback. When several optimal scripts
/// exist the traceback prefers substitution (or match), then deletion,
/// then insertion.
EditBreakdown LevenshteinOps(std::u32string_view reference,
                             std::u32string_view hypothesis);
EditBreakdown LevenshteinOps(std::string_view reference,
                             std::string_view hypothesis);

/// Distance only. Uses the bit-parallel (Myers/Hyyro) recurrence when the
/// reference fits in 64 code points, a two-row DP otherwise.
std::size_t EditDistance(std::u32string_view reference,
                         std::u32string_view hypothesis);
std::size_t EditDistanceBitParallel(std::u32string_view reference,
                                    std::u32string_view hypothesis);
std::size_t EditDistanceTwoRow(std::u32string_view reference,
                               std::u32string_view hypothesis);

/// 100 * (I + S + D) / max(1, len(reference)). Not clipped at 100.
double Cer(std::string_view reference, std::string_view hypothesis);

/// Word error rate on whitespace-split tokens; reporting only.
double Wer(std::string_view reference, std::string_view hypothesis);

}  // namespace lnoise

#endif  // LNOISE_EDIT_DISTANCE_H_
