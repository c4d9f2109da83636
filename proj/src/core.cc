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

#include "lnoise/core.h"

#include <cmath>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace lnoise {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedFile: return "MalformedFile";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNonFiniteScore: return "NonFiniteScore";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kRankOutOfRange: return "RankOutOfRange";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kNonPositiveStd: return "NonPositiveStd";
    case ErrorKind::kOutOfRange: return "OutOfRange";
    case ErrorKind::kTextTooLong: return "TextTooLong";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", ErrorKindName(kind), what)),
      kind_(kind) {}

std::string_view LabelName(Label label) {
  return label == Label::kBenign ? "benign" : "adversarial";
}

Label ParseLabel(std::string_view name) {
  if (name == "benign") return Label::kBenign;
  if (name == "adversarial") return Label::kAdversarial;
  throw Error(ErrorKind::kUnknownLabel, fmt::format("label '{}'", name));
}

std::u32string Utf8ToCodePoints(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw Error(ErrorKind::kInvalidArgument, "invalid UTF-8 lead byte");
    }
    if (i + extra >= text.size() && extra > 0) {
      throw Error(ErrorKind::kInvalidArgument, "truncated UTF-8 sequence");
    }
    for (std::size_t j = 1; j <= extra; ++j) {
      const auto cont = static_cast<unsigned char>(text[i + j]);
      if ((cont & 0xC0) != 0x80) {
        throw Error(ErrorKind::kInvalidArgument, "invalid UTF-8 continuation");
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string CodePointsToUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> tokens, std::size_t blank_index)
    : tokens_(std::move(tokens)), blank_(blank_index) {
  if (tokens_.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "alphabet needs at least 2 tokens");
  }
  if (blank_ >= tokens_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("blank_index {} outside alphabet of size {}",
                            blank_, tokens_.size()));
  }
  std::set<std::string_view> seen;
  for (const auto& t : tokens_) {
    if (Utf8ToCodePoints(t).size() != 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("token '{}' is not a single character", t));
    }
    if (!seen.insert(t).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("duplicate token '{}'", t));
    }
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i] == token) return i;
  }
  return std::nullopt;
}

std::string Alphabet::Spell(std::span<const std::size_t> indices) const {
  std::string out;
  for (std::size_t i : indices) {
    if (i != blank_) out += tokens_.at(i);
  }
  return out;
}

Alphabet DefaultEnglishAlphabet() {
  std::vector<std::string> tokens;
  tokens.emplace_back(" ");
  for (char c = 'a'; c <= 'z'; ++c) tokens.emplace_back(1, c);
  tokens.emplace_back("'");
  tokens.emplace_back("-");
  return Alphabet(std::move(tokens), 28);
}

LogitSequence::LogitSequence(std::string id, Alphabet alphabet,
                             std::vector<double> scores,
                             std::optional<Label> label,
                             std::optional<std::string> transcript)
    : id_(std::move(id)),
      alphabet_(std::move(alphabet)),
      scores_(std::move(scores)),
      label_(label),
      transcript_(std::move(transcript)) {
  const std::size_t v = alphabet_.size();
  if (scores_.empty()) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("sequence '{}' has no frames", id_));
  }
  if (scores_.size() % v != 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("{} scores is not a multiple of V={}",
                            scores_.size(), v));
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw Error(ErrorKind::kNonFiniteScore,
                  fmt::format("sequence '{}' frame {} token {}", id_, i / v,
                              i % v));
    }
  }
}

LogitSequence LogitSequence::FromRows(
    std::string id, Alphabet alphabet,
    const std::vector<std::vector<double>>& rows, std::optional<Label> label,
    std::optional<std::string> transcript) {
  const std::size_t v = alphabet.size();
  std::vector<double> flat;
  flat.reserve(rows.size() * v);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != v) {
      throw Error(ErrorKind::kDimensionMismatch,
                  fmt::format("frame {} has {} scores, alphabet has {}", t,
                              rows[t].size(), v));
    }
    flat.insert(flat.end(), rows[t].begin(), rows[t].end());
  }
  return LogitSequence(std::move(id), std::move(alphabet), std::move(flat),
                       label, std::move(transcript));
}

LogitSequence LogitSequence::WithScores(std::vector<double> scores) const {
  if (scores.size() != scores_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "replacement scores differ in shape");
  }
  return LogitSequence(id_, alphabet_, std::move(scores), label_, transcript_);
}

}  // namespace lnoise
