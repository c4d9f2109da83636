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

#include "lnoise/synth.h"

#include <algorithm>
#include <cmath>
#include <system_error>

#include <fmt/format.h>

#include "lnoise/detector.h"
#include "lnoise/noise.h"

namespace lnoise {

namespace fs = std::filesystem;

void GapProfile::Validate() const {
  if (!(floor > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "profile floor must be > 0");
  }
  if (!(gap_std_k2 >= 0.0) || !(extra_gap_per_rank >= 0.0) ||
      !std::isfinite(gap_mean_k2)) {
    throw Error(ErrorKind::kInvalidArgument, "bad gap profile parameters");
  }
}

GapProfile BenignProfile() { return {"benign", 9.0, 3.0, 2.5, 1.0}; }

GapProfile AdversarialProfile() { return {"adversarial", 5.0, 1.0, 1.0, 0.5}; }

GapProfile ProfileByName(std::string_view name) {
  if (name == "benign") return BenignProfile();
  if (name == "adversarial") return AdversarialProfile();
  throw Error(ErrorKind::kInvalidArgument, fmt::format("profile '{}'", name));
}

namespace {

// Splits `total` into `parts` near-equal shares.
std::size_t Share(std::size_t total, std::size_t parts, std::size_t i) {
  return (i + 1) * total / parts - i * total / parts;
}

// Per-frame top token for a CTC alignment of `labels` over `frames`.
std::vector<std::size_t> AlignmentPath(const std::vector<std::size_t>& labels,
                                       std::size_t frames, std::size_t blank,
                                       double blank_fraction) {
  const std::size_t n = labels.size();
  if (n == 0) return std::vector<std::size_t>(frames, blank);

  std::size_t repeats = 0;
  for (std::size_t i = 1; i < n; ++i) repeats += labels[i] == labels[i - 1];
  const auto wanted =
      static_cast<std::size_t>(std::llround(blank_fraction * static_cast<double>(frames)));
  const std::size_t blanks = std::clamp(wanted, repeats, frames - n);
  const std::size_t spare_blanks = blanks - repeats;
  const std::size_t char_frames = frames - blanks;

  std::vector<std::size_t> path;
  path.reserve(frames);
  // Slot 0 precedes the first label, slot n follows the last.
  for (std::size_t slot = 0; slot <= n; ++slot) {
    std::size_t run = Share(spare_blanks, n + 1, slot);
    if (slot > 0 && slot < n && labels[slot] == labels[slot - 1]) ++run;
    path.insert(path.end(), run, blank);
    if (slot < n) path.insert(path.end(), Share(char_frames, n, slot), labels[slot]);
  }
  return path;
}

double TruncatedNormal(GaussianSource& rng, double mean, double std,
                       double floor) {
  if (std == 0.0) return std::max(mean, floor);
  // Rejection sampling; the profiles keep the acceptance rate high.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double x = mean + std * rng.Next();
    if (x >= floor) return x;
  }
  return floor;
}

}  // namespace

LogitSequence GenerateSequence(const SynthSpec& spec, std::uint64_t seed,
                               std::string id) {
  spec.profile.Validate();
  const Alphabet& alphabet = spec.alphabet;
  const std::size_t vocab = alphabet.size();
  const std::size_t blank = alphabet.blank_index();
  if (!(spec.blank_run_fraction >= 0.0 && spec.blank_run_fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "blank_run_fraction outside [0, 1]");
  }
  if (spec.competitor_ranks + 2 > vocab) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("{} competitor ranks need V >= {}",
                            spec.competitor_ranks, spec.competitor_ranks + 2));
  }

  std::vector<std::size_t> labels;
  for (char32_t cp : Utf8ToCodePoints(spec.target_text)) {
    const auto idx = alphabet.find(CodePointsToUtf8(std::u32string(1, cp)));
    if (!idx || *idx == blank) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("target text character outside alphabet"));
    }
    labels.push_back(*idx);
  }
  std::size_t needed = labels.size();
  for (std::size_t i = 1; i < labels.size(); ++i) needed += labels[i] == labels[i - 1];
  if (spec.frames < std::max<std::size_t>(needed, 1)) {
    throw Error(ErrorKind::kTextTooLong,
                fmt::format("text needs {} frames, have {}", needed, spec.frames));
  }

  const std::vector<std::size_t> path =
      AlignmentPath(labels, spec.frames, blank, spec.blank_run_fraction);

  GaussianSource rng(seed);
  const GapProfile& p = spec.profile;
  std::vector<double> scores(spec.frames * vocab);
  std::vector<std::size_t> pool;
  std::vector<double> gaps(spec.competitor_ranks);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const std::size_t top = path[t];
    double prev = 0.0;
    for (std::size_t r = 0; r < spec.competitor_ranks; ++r) {
      if (r == 0) {
        prev = TruncatedNormal(rng, p.gap_mean_k2, p.gap_std_k2, p.floor);
      } else if (p.extra_gap_per_rank > 0.0) {
        prev += -p.extra_gap_per_rank * std::log(1.0 - rng.NextUniform());
      }
      gaps[r] = prev;
    }
    const double filler =
        kAnchorScore -
        std::max(kFillerGap, (gaps.empty() ? 0.0 : gaps.back()) + 5.0);

    auto row = std::span<double>(scores).subspan(t * vocab, vocab);
    std::fill(row.begin(), row.end(), filler);
    row[top] = kAnchorScore;

    pool.clear();
    for (std::size_t c = 0; c < vocab; ++c) {
      if (c != blank && c != top) pool.push_back(c);
    }
    // Partial Fisher-Yates: the first competitor_ranks entries are the pick.
    for (std::size_t r = 0; r < spec.competitor_ranks; ++r) {
      const std::size_t j = r + rng.NextBits() % (pool.size() - r);
      std::swap(pool[r], pool[j]);
      row[pool[r]] = kAnchorScore - gaps[r];
    }
  }

  std::optional<Label> label;
  if (p.name == "benign") label = Label::kBenign;
  if (p.name == "adversarial") label = Label::kAdversarial;
  if (id.empty()) id = fmt::format("{}-{:016x}", p.name, seed);
  return LogitSequence(std::move(id), alphabet, std::move(scores), label,
                       spec.target_text);
}

DatasetManifest GenerateDataset(const SynthSpec& spec, std::size_t count,
                                std::uint64_t master_seed,
                                const fs::path& out_dir, std::size_t jobs) {
  if (count < 1) throw Error(ErrorKind::kInvalidArgument, "count must be >= 1");
  if (spec.profile.name != "benign" && spec.profile.name != "adversarial") {
    throw Error(ErrorKind::kInvalidArgument,
                "dataset profiles must be named benign or adversarial");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIoError,
                fmt::format("cannot create {}: {}", out_dir.string(), ec.message()));
  }

  DatasetManifest manifest;
  manifest.entries.resize(count);
  ParallelFor(count, jobs, [&](std::size_t i) {
    const std::string id = fmt::format("{}-{:05d}", spec.profile.name, i);
    const LogitSequence seq = GenerateSequence(
        spec, DeriveSeed(master_seed, spec.profile.name, i), id);
    const fs::path file = out_dir / (id + ".json");
    SaveLogits(seq, file);
    manifest.entries[i] = {file, *seq.label()};
  });
  SaveManifest(manifest, out_dir / (spec.profile.name + ".jsonl"));
  return manifest;
}

}  // namespace lnoise
