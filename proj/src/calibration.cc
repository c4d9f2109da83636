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

#include "lnoise/calibration.h"

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>

#include <fmt/format.h>

namespace lnoise {

namespace {

double ParseNumber(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("bad number '{}'", text));
  }
  return v;
}

}  // namespace

std::vector<double> ParseGrid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("range '{}' must be start:stop:step", text));
    }
    const double start = ParseNumber(text.substr(0, a));
    const double stop = ParseNumber(text.substr(a + 1, b - a - 1));
    const double step = ParseNumber(text.substr(b + 1));
    if (!(step > 0.0)) throw Error(ErrorKind::kInvalidArgument, "range step must be > 0");
    for (std::size_t i = 0;; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v >= stop - 1e-9 * step) break;
      out.push_back(v);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      out.push_back(ParseNumber(text.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("grid '{}' is empty", text));
  }
  return out;
}

std::vector<LogitSequence> LoadAll(const DatasetManifest& manifest,
                                   std::size_t jobs) {
  std::vector<std::optional<LogitSequence>> loaded(manifest.entries.size());
  ParallelFor(loaded.size(), jobs, [&](std::size_t i) {
    loaded[i] = LoadLogits(manifest.entries[i].path);
  });
  std::vector<LogitSequence> out;
  out.reserve(loaded.size());
  for (auto& s : loaded) out.push_back(std::move(*s));
  return out;
}

CalibrationResult GridSearch(std::span<const LogitSequence> benign,
                             std::span<const LogitSequence> adversarial,
                             const GridSearchOptions& options) {
  if (options.std_grid.empty() || options.threshold_grid.empty()) {
    throw Error(ErrorKind::kEmptyInput, "std and threshold grids must be non-empty");
  }
  if (benign.empty() || adversarial.empty()) {
    throw Error(ErrorKind::kEmptyInput, "both sample sets must be non-empty");
  }
  for (double s : options.std_grid) {
    if (s < 0.0) throw Error(ErrorKind::kNonPositiveStd, "std grid entry < 0");
  }
  for (double t : options.threshold_grid) {
    if (!(t >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "threshold < 0");
  }

  const std::size_t nb = benign.size();
  const std::size_t total = nb + adversarial.size();
  auto sample = [&](std::size_t i) -> const LogitSequence& {
    return i < nb ? benign[i] : adversarial[i - nb];
  };

  CalibrationResult result;
  std::optional<std::tuple<double, double, double, double>> best_key;
  for (double s : options.std_grid) {
    std::vector<double> avg(total);
    const NoiseSpec noise = NoiseSpec::Gaussian(s);
    ParallelFor(total, options.jobs, [&](std::size_t i) {
      avg[i] = MeasureNoisedCers(sample(i), noise, options.n_instances,
                                 options.decoder, options.seeds)
                   .avg_cer;
    });
    for (double thr : options.threshold_grid) {
      CalibrationRow row{s, thr, {}};
      for (std::size_t i = 0; i < total; ++i) {
        row.counts.Add(i < nb ? Label::kBenign : Label::kAdversarial,
                       avg[i] >= thr);
      }
      result.table.push_back(row);
      if (row.counts.fpr() > options.fpr_budget) continue;
      // Smaller key is better.
      const auto key = std::make_tuple(-row.counts.accuracy(), row.counts.fpr(),
                                       s, thr);
      if (!best_key || key < *best_key) {
        best_key = key;
        DetectorConfig cfg;
        cfg.noise = noise;
        cfg.cer_threshold = thr;
        cfg.n_instances = options.n_instances;
        cfg.decoder = options.decoder;
        cfg.seeds = options.seeds;
        result.best = cfg;
      }
    }
  }
  return result;
}

CalibrationResult GridSearch(const DatasetManifest& benign,
                             const DatasetManifest& adversarial,
                             const GridSearchOptions& options) {
  const auto b = LoadAll(benign, options.jobs);
  const auto a = LoadAll(adversarial, options.jobs);
  return GridSearch(std::span<const LogitSequence>(b),
                    std::span<const LogitSequence>(a), options);
}

}  // namespace lnoise
