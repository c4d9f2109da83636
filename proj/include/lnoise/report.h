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

// CSV / JSON renderings of results. Numbers use the shortest round-trip
// representation, so identical values always print identically.
//
//   results:      id,label,verdict,avg_cer,instance_cers,original_text,seed
//   calibration:  std,threshold,accuracy,fpr,fnr,tp,tn,fp,fn
//   histogram:    bin_left,bin_right,density,wave_type,k
//   pinv:         std,wave_type,k_max,p_total[,p_total_mc,mc_trials,seed]

#ifndef LNOISE_REPORT_H_
#define LNOISE_REPORT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lnoise/calibration.h"
#include "lnoise/detector.h"
#include "lnoise/inversion.h"

namespace lnoise {

std::string CsvField(std::string_view field);
std::string FormatNumber(double x);

std::string ResultsCsv(std::span<const LabeledVerdict> rows,
                       std::uint64_t seed);
std::string CalibrationCsv(std::span<const CalibrationRow> rows);

struct HistogramSeries {
  std::string wave_type;
  int k;
  std::vector<HistogramBin> bins;
};
std::string HistogramCsv(std::span<const HistogramSeries> series);

struct PinvReportRow {
  PinvRow row;
  int k_max;
  std::optional<double> p_total_mc;
  std::uint64_t mc_trials = 0;
};
std::string PinvCsv(std::span<const PinvReportRow> rows, bool with_mc,
                    std::uint64_t seed);

nlohmann::json VerdictJson(const Verdict& verdict, const DetectorConfig& config);
nlohmann::json DetectorConfigJson(const DetectorConfig& config);
nlohmann::json EvalSummaryJson(const EvalReport& report);

}  // namespace lnoise

#endif  // LNOISE_REPORT_H_
