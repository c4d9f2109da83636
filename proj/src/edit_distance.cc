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

#include "lnoise/edit_distance.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lnoise/core.h"

namespace lnoise {

EditBreakdown LevenshteinOps(std::u32string_view ref, std::u32string_view hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t stride = m + 1;
  std::vector<std::size_t> d((n + 1) * stride);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return d[i * stride + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = at(i - 1, j - 1) + (ref[i - 1] != hyp[j - 1]);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  EditBreakdown out;
  out.ref_len = n;
  out.distance = at(n, m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool differ = ref[i - 1] != hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + differ) {
        out.substitutions += differ;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++out.deletions;
      --i;
    } else {
      ++out.insertions;
      --j;
    }
  }
  return out;
}

EditBreakdown LevenshteinOps(std::string_view reference,
                             std::string_view hypothesis) {
  return LevenshteinOps(Utf8ToCodePoints(reference),
                        Utf8ToCodePoints(hypothesis));
}

std::size_t EditDistanceTwoRow(std::u32string_view ref,
                               std::u32string_view hyp) {
  std::vector<std::size_t> prev(hyp.size() + 1);
  std::vector<std::size_t> cur(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + (ref[i - 1] != hyp[j - 1]), prev[j] + 1,
                         cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[hyp.size()];
}

std::size_t EditDistanceBitParallel(std::u32string_view ref,
                                    std::u32string_view hyp) {
  const std::size_t m = ref.size();
  if (m == 0) return hyp.size();
  if (m > 64) return EditDistanceTwoRow(ref, hyp);

  // Match masks per reference character; small, so a sorted vector beats a
  // hash map.
  std::vector<std::pair<char32_t, std::uint64_t>> peq;
  for (std::size_t i = 0; i < m; ++i) {
    auto it = std::lower_bound(
        peq.begin(), peq.end(), ref[i],
        [](const auto& e, char32_t c) { return e.first < c; });
    if (it == peq.end() || it->first != ref[i]) it = peq.insert(it, {ref[i], 0});
    it->second |= std::uint64_t{1} << i;
  }
  auto mask_of = [&](char32_t c) -> std::uint64_t {
    auto it = std::lower_bound(
        peq.begin(), peq.end(), c,
        [](const auto& e, char32_t x) { return e.first < x; });
    return (it != peq.end() && it->first == c) ? it->second : 0;
  };

  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  std::uint64_t pv = ~std::uint64_t{0};
  std::uint64_t mv = 0;
  std::size_t score = m;
  for (char32_t c : hyp) {
    const std::uint64_t eq = mask_of(c);
    const std::uint64_t xv = eq | mv;
    const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
    std::uint64_t ph = mv | ~(xh | pv);
    std::uint64_t mh = pv & xh;
    if (ph & top) {
      ++score;
    } else if (mh & top) {
      --score;
    }
    // The first row of the DP grows by one per hypothesis character.
    ph = (ph << 1) | 1;
    mh <<= 1;
    pv = mh | ~(xv | ph);
    mv = ph & xv;
  }
  return score;
}

std::size_t EditDistance(std::u32string_view reference,
                         std::u32string_view hypothesis) {
  return EditDistanceBitParallel(reference, hypothesis);
}

double Cer(std::string_view reference, std::string_view hypothesis) {
  const std::u32string ref = Utf8ToCodePoints(reference);
  const std::u32string hyp = Utf8ToCodePoints(hypothesis);
  const std::size_t dist = EditDistance(ref, hyp);
  return 100.0 * static_cast<double>(dist) /
         static_cast<double>(std::max<std::size_t>(1, ref.size()));
}

double Wer(std::string_view reference, std::string_view hypothesis) {
  std::map<std::string, char32_t> vocab;
  auto encode = [&](std::string_view text) {
    std::u32string out;
    std::istringstream in{std::string(text)};
    std::string word;
    while (in >> word) {
      auto [it, inserted] =
          vocab.emplace(word, static_cast<char32_t>(vocab.size()));
      out.push_back(it->second);
    }
    return out;
  };
  const std::u32string ref = encode(reference);
  const std::u32string hyp = encode(hypothesis);
  return 100.0 * static_cast<double>(EditDistanceTwoRow(ref, hyp)) /
         static_cast<double>(std::max<std::size_t>(1, ref.size()));
}

}  // namespace lnoise
