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

// Shared fixtures for the test binaries.

#ifndef LNOISE_TESTS_TEST_UTIL_H_
#define LNOISE_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lnoise/core.h"

namespace lnoise::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("lnoise-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

/// First `v` letters of "abcdefgh..." with the blank "-" last.
inline Alphabet SmallAlphabet(std::size_t v) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i + 1 < v; ++i) {
    tokens.emplace_back(1, static_cast<char>('a' + i));
  }
  tokens.emplace_back("-");
  return Alphabet(std::move(tokens), v - 1);
}

/// Frames of i.i.d. Normal(0, scale^2) scores.
inline LogitSequence RandomSequence(std::mt19937_64& rng, std::size_t frames,
                                    const Alphabet& alphabet,
                                    double scale = 2.0,
                                    std::string id = "rand") {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> scores(frames * alphabet.size());
  for (double& x : scores) x = dist(rng);
  return LogitSequence(std::move(id), alphabet, std::move(scores));
}

/// One-hot-ish frames: the path token gets `high`, everything else 0.
inline LogitSequence PathSequence(const std::vector<std::size_t>& path,
                                  const Alphabet& alphabet,
                                  double high = 10.0,
                                  std::string id = "path") {
  std::vector<double> scores(path.size() * alphabet.size(), 0.0);
  for (std::size_t t = 0; t < path.size(); ++t) {
    scores[t * alphabet.size() + path[t]] = high;
  }
  return LogitSequence(std::move(id), alphabet, std::move(scores));
}

}  // namespace lnoise::testing

#endif  // LNOISE_TESTS_TEST_UTIL_H_
