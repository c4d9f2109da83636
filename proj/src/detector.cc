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

#include "lnoise/detector.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "lnoise/edit_distance.h"

namespace lnoise {

void DetectorConfig::Validate() const {
  if (noise.std < 0.0 || !std::isfinite(noise.std)) {
    throw Error(ErrorKind::kNonPositiveStd, "noise std must be >= 0");
  }
  if (!(cer_threshold >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "CER threshold must be >= 0");
  }
  if (n_instances < 1) {
    throw Error(ErrorKind::kInvalidArgument, "n_instances must be >= 1");
  }
  if (decoder.beam_width < 1) {
    throw Error(ErrorKind::kInvalidArgument, "beam_width must be >= 1");
  }
}

NoisedCers MeasureNoisedCers(const LogitSequence& seq, const NoiseSpec& noise,
                             std::size_t n_instances,
                             const DecoderConfig& decoder,
                             const SeedSpec& seeds) {
  if (n_instances < 1) {
    throw Error(ErrorKind::kInvalidArgument, "n_instances must be >= 1");
  }
  NoisedCers out;
  out.id = seq.id();
  out.original_text = Decode(seq, decoder).text;
  out.instance_cers.reserve(n_instances);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_instances; ++i) {
    const LogitSequence noised =
        AddNoise(seq, noise, DeriveSeed(seeds.master_seed, seq.id(), i));
    const double cer = Cer(out.original_text, Decode(noised, decoder).text);
    out.instance_cers.push_back(cer);
    sum += cer;
  }
  out.avg_cer = sum / static_cast<double>(n_instances);
  return out;
}

Verdict ApplyThreshold(const NoisedCers& cers, double threshold) {
  return {cers.id, cers.original_text, cers.instance_cers, cers.avg_cer,
          cers.avg_cer >= threshold};
}

Verdict Detect(const LogitSequence& seq, const DetectorConfig& config) {
  config.Validate();
  return ApplyThreshold(MeasureNoisedCers(seq, config.noise,
                                          config.n_instances, config.decoder,
                                          config.seeds),
                        config.cer_threshold);
}

double ConfusionCounts::accuracy() const {
  const std::size_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(n);
}

double ConfusionCounts::fpr() const {
  return fp + tn == 0 ? 0.0
                      : static_cast<double>(fp) / static_cast<double>(fp + tn);
}

double ConfusionCounts::fnr() const {
  return fn + tp == 0 ? 0.0
                      : static_cast<double>(fn) / static_cast<double>(fn + tp);
}

void ConfusionCounts::Add(Label truth, bool flagged) {
  if (truth == Label::kAdversarial) {
    ++(flagged ? tp : fn);
  } else {
    ++(flagged ? fp : tn);
  }
}

void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)>& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!first_error) first_error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

EvalReport DetectBatch(const DatasetManifest& manifest,
                       const DetectorConfig& config, std::size_t jobs) {
  config.Validate();
  const std::size_t n = manifest.entries.size();
  std::vector<std::optional<Verdict>> verdicts(n);
  std::vector<std::string> errors(n);

  ParallelFor(n, jobs, [&](std::size_t i) {
    try {
      const LogitSequence seq = LoadLogits(manifest.entries[i].path);
      verdicts[i] = Detect(seq, config);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  EvalReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& entry = manifest.entries[i];
    if (!verdicts[i]) {
      report.failures.push_back({entry.path.string(), errors[i]});
      continue;
    }
    report.counts.Add(entry.label, verdicts[i]->is_adversarial);
    report.per_sample.push_back({std::move(*verdicts[i]), entry.label});
  }
  return report;
}

}  // namespace lnoise
