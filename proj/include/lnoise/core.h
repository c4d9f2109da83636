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

#ifndef LNOISE_CORE_H_
#define LNOISE_CORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lnoise {

enum class ErrorKind {
  kMalformedFile,
  kDimensionMismatch,
  kNonFiniteScore,
  kIoError,
  kUnknownLabel,
  kInvalidArgument,
  kRankOutOfRange,
  kEmptyInput,
  kNonPositiveStd,
  kOutOfRange,
  kTextTooLong,
};

const char* ErrorKindName(ErrorKind kind);

/// Every failure raised by the library. `kind()` identifies the contract
/// that was violated; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Label { kBenign, kAdversarial };

std::string_view LabelName(Label label);
/// Throws Error(kUnknownLabel) for anything but "benign" / "adversarial".
Label ParseLabel(std::string_view name);

/// Decodes UTF-8 into code points. Malformed bytes throw kInvalidArgument.
std::u32string Utf8ToCodePoints(std::string_view text);
std::string CodePointsToUtf8(std::u32string_view text);

/// Ordered CTC token inventory. Each token is exactly one code point.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> tokens, std::size_t blank_index);

  std::size_t size() const { return tokens_.size(); }
  std::size_t blank_index() const { return blank_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(std::size_t i) const { return tokens_.at(i); }
  /// Index of `token` or nullopt.
  std::optional<std::size_t> find(std::string_view token) const;

  /// Maps a token-index path to text, skipping blanks. No CTC collapsing.
  std::string Spell(std::span<const std::size_t> indices) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> tokens_;
  std::size_t blank_;
};

/// The 28 DeepSpeech-style characters (space, a-z, apostrophe) followed by
/// the blank token "-", V = 29.
Alphabet DefaultEnglishAlphabet();

/// T frames x V unnormalized scores, stored row-major. Immutable once built;
/// the constructor enforces shape and finiteness.
class LogitSequence {
 public:
  LogitSequence(std::string id, Alphabet alphabet, std::vector<double> scores,
                std::optional<Label> label = std::nullopt,
                std::optional<std::string> transcript = std::nullopt);

  /// Builds from nested rows; a row whose length differs from V throws
  /// kDimensionMismatch.
  static LogitSequence FromRows(std::string id, Alphabet alphabet,
                                const std::vector<std::vector<double>>& rows,
                                std::optional<Label> label = std::nullopt,
                                std::optional<std::string> transcript =
                                    std::nullopt);

  const std::string& id() const { return id_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::optional<Label>& label() const { return label_; }
  const std::optional<std::string>& transcript() const { return transcript_; }

  std::size_t num_frames() const { return scores_.size() / alphabet_.size(); }
  std::size_t vocab_size() const { return alphabet_.size(); }
  std::span<const double> frame(std::size_t t) const {
    return std::span<const double>(scores_).subspan(t * vocab_size(),
                                                    vocab_size());
  }
  std::span<const double> scores() const { return scores_; }

  /// Same metadata, new scores of identical shape.
  LogitSequence WithScores(std::vector<double> scores) const;

  bool operator==(const LogitSequence&) const = default;

 private:
  std::string id_;
  Alphabet alphabet_;
  std::vector<double> scores_;
  std::optional<Label> label_;
  std::optional<std::string> transcript_;
};

/// Decoded text; never contains the blank token.
struct Transcription {
  std::string text;
  bool operator==(const Transcription&) const = default;
};

}  // namespace lnoise

#endif  // LNOISE_CORE_H_
