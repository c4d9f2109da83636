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

#ifndef LNOISE_CALIBRATION_H_
#define LNOISE_CALIBRATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lnoise/detector.h"

namespace lnoise {

struct CalibrationRow {
  double std;
  double threshold;
  ConfusionCounts counts;
};

struct GridSearchOptions {
  std::vector<double> std_grid;
  std::vector<double> threshold_grid;
  std::size_t n_instances = 4;
  double fpr_budget = 0.05;
  DecoderConfig decoder;
  SeedSpec seeds;
  std::size_t jobs = 1;
};

struct CalibrationResult {
  /// nullopt when no pair meets the FPR budget (NoFeasiblePair); the table
  /// is filled either way.
  std::optional<DetectorConfig> best;
  std::vector<CalibrationRow> table;  // std-major, grid order
};

/// Evaluates every (std, threshold) pair. Noised decodes are computed once
/// per std and re-thresholded. Best = highest accuracy with fpr <= budget;
/// ties go to lower fpr, then lower std, then lower threshold.
CalibrationResult GridSearch(std::span<const LogitSequence> benign,
                             std::span<const LogitSequence> adversarial,
                             const GridSearchOptions& options);

CalibrationResult GridSearch(const DatasetManifest& benign,
                             const DatasetManifest& adversarial,
                             const GridSearchOptions& options);

/// Grid syntax: "start:stop:step" (stop excluded) or "a,b,c".
std::vector<double> ParseGrid(std::string_view text);

/// Loads every entry; a failure throws.
std::vector<LogitSequence> LoadAll(const DatasetManifest& manifest,
                                   std::size_t jobs);

}  // namespace lnoise

#endif  // LNOISE_CALIBRATION_H_
