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

// Logit-noising detector.
//
// The clean transcription is compared against the transcriptions of n
// independently noised copies of the same logits. The input is flagged
// adversarial when the mean CER (clean text as reference) reaches the
// threshold: benign logits have wide top-k gaps and survive the noise,
// adversarial ones do not.

#ifndef LNOISE_DETECTOR_H_
#define LNOISE_DETECTOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lnoise/core.h"
#include "lnoise/ctc_decoder.h"
#include "lnoise/logit_io.h"
#include "lnoise/noise.h"

namespace lnoise {

struct DetectorConfig {
  NoiseSpec noise = NoiseSpec::Gaussian(3.0);
  double cer_threshold = 60.0;  // percent
  std::size_t n_instances = 4;
  DecoderConfig decoder;
  SeedSpec seeds;

  void Validate() const;
  bool operator==(const DetectorConfig&) const = default;
};

struct Verdict {
  std::string id;
  std::string original_text;
  std::vector<double> instance_cers;
  double avg_cer = 0.0;
  bool is_adversarial = false;
};

/// Everything a verdict needs except the threshold.
struct NoisedCers {
  std::string id;
  std::string original_text;
  std::vector<double> instance_cers;
  double avg_cer = 0.0;
};

NoisedCers MeasureNoisedCers(const LogitSequence& seq, const NoiseSpec& noise,
                             std::size_t n_instances,
                             const DecoderConfig& decoder,
                             const SeedSpec& seeds);

Verdict ApplyThreshold(const NoisedCers& cers, double threshold);

Verdict Detect(const LogitSequence& seq, const DetectorConfig& config);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  double accuracy() const;
  double fpr() const;  // fp / (fp + tn), 0 when empty
  double fnr() const;  // fn / (fn + tp), 0 when empty
  void Add(Label truth, bool flagged);
  bool operator==(const ConfusionCounts&) const = default;
};

struct SampleFailure {
  std::string path;
  std::string message;
};

struct LabeledVerdict {
  Verdict verdict;
  Label label;
};

struct EvalReport {
  ConfusionCounts counts;
  std::vector<LabeledVerdict> per_sample;  // manifest order
  std::vector<SampleFailure> failures;     // excluded from counts

  double accuracy() const { return counts.accuracy(); }
  double fpr() const { return counts.fpr(); }
  double fnr() const { return counts.fnr(); }
};

/// Runs `body(i)` for i in [0, n) on up to `jobs` threads. Exceptions from
/// `body` propagate to the caller (the first one wins).
void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)>& body);

/// Per-sample results do not depend on `jobs`. A sample that fails to load
/// is recorded in `failures` and left out of the counts.
EvalReport DetectBatch(const DatasetManifest& manifest,
                       const DetectorConfig& config, std::size_t jobs);

}  // namespace lnoise

#endif  // LNOISE_DETECTOR_H_
