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

#include "lnoise/report.h"

#include <fmt/format.h>

namespace lnoise {

using nlohmann::json;

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string FormatNumber(double x) { return fmt::format("{}", x); }

std::string ResultsCsv(std::span<const LabeledVerdict> rows,
                       std::uint64_t seed) {
  std::string out =
      "id,label,verdict,avg_cer,instance_cers,original_text,seed\n";
  for (const auto& [v, label] : rows) {
    std::string cers;
    for (std::size_t i = 0; i < v.instance_cers.size(); ++i) {
      if (i > 0) cers += ';';
      cers += FormatNumber(v.instance_cers[i]);
    }
    out += fmt::format("{},{},{},{},{},{},{}\n", CsvField(v.id),
                       LabelName(label),
                       v.is_adversarial ? "adversarial" : "benign",
                       FormatNumber(v.avg_cer), cers,
                       CsvField(v.original_text), seed);
  }
  return out;
}

std::string CalibrationCsv(std::span<const CalibrationRow> rows) {
  std::string out = "std,threshold,accuracy,fpr,fnr,tp,tn,fp,fn\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", FormatNumber(r.std),
                       FormatNumber(r.threshold),
                       FormatNumber(r.counts.accuracy()),
                       FormatNumber(r.counts.fpr()),
                       FormatNumber(r.counts.fnr()), r.counts.tp, r.counts.tn,
                       r.counts.fp, r.counts.fn);
  }
  return out;
}

std::string HistogramCsv(std::span<const HistogramSeries> series) {
  std::string out = "bin_left,bin_right,density,wave_type,k\n";
  for (const auto& s : series) {
    for (const auto& b : s.bins) {
      out += fmt::format("{},{},{},{},{}\n", FormatNumber(b.left),
                         FormatNumber(b.right), FormatNumber(b.density),
                         CsvField(s.wave_type), s.k);
    }
  }
  return out;
}

std::string PinvCsv(std::span<const PinvReportRow> rows, bool with_mc,
                    std::uint64_t seed) {
  std::string out = with_mc
                        ? "std,wave_type,k_max,p_total,p_total_mc,mc_trials,seed\n"
                        : "std,wave_type,k_max,p_total\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}", FormatNumber(r.row.std),
                       CsvField(r.row.wave_type), r.k_max,
                       FormatNumber(r.row.p_total));
    if (with_mc) {
      out += fmt::format(",{},{},{}", FormatNumber(r.p_total_mc.value_or(0.0)),
                         r.mc_trials, seed);
    }
    out += '\n';
  }
  return out;
}

json DetectorConfigJson(const DetectorConfig& config) {
  json j;
  j["std"] = config.noise.std;
  j["threshold"] = config.cer_threshold;
  j["instances"] = config.n_instances;
  j["decoder"] = std::string(DecoderKindName(config.decoder.kind));
  if (config.decoder.kind == DecoderKind::kBeam) {
    j["beam_width"] = config.decoder.beam_width;
  }
  j["seed"] = config.seeds.master_seed;
  return j;
}

json VerdictJson(const Verdict& verdict, const DetectorConfig& config) {
  json j;
  j["id"] = verdict.id;
  j["original_text"] = verdict.original_text;
  j["instance_cers"] = verdict.instance_cers;
  j["avg_cer"] = verdict.avg_cer;
  j["is_adversarial"] = verdict.is_adversarial;
  j["verdict"] = verdict.is_adversarial ? "adversarial" : "benign";
  j["std"] = config.noise.std;
  j["threshold"] = config.cer_threshold;
  j["seed"] = config.seeds.master_seed;
  return j;
}

json EvalSummaryJson(const EvalReport& report) {
  json j;
  j["accuracy"] = report.accuracy();
  j["fpr"] = report.fpr();
  j["fnr"] = report.fnr();
  j["tp"] = report.counts.tp;
  j["tn"] = report.counts.tn;
  j["fp"] = report.counts.fp;
  j["fn"] = report.counts.fn;
  j["failed"] = report.failures.size();
  return j;
}

}  // namespace lnoise
