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

// On-disk formats.
//
// Logit file (JSON, UTF-8):
//   {"id": "...", "alphabet": [" ", "a", ..., "-"], "blank_index": 28,
//    "frames": [[...V numbers...], ...],
//    "label": "benign" | "adversarial",     (optional)
//    "transcript": "..."}                    (optional)
// Unknown keys are ignored on load.
//
// Manifest (JSON Lines): one {"path": "<rel path>", "label": "..."} per
// line. Relative paths resolve against the manifest's directory.

#ifndef LNOISE_LOGIT_IO_H_
#define LNOISE_LOGIT_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "lnoise/core.h"

namespace lnoise {

nlohmann::json LogitsToJson(const LogitSequence& seq);
LogitSequence LogitsFromJson(const nlohmann::json& j);

LogitSequence LoadLogits(const std::filesystem::path& path);
void SaveLogits(const LogitSequence& seq, const std::filesystem::path& path);
/// Same as SaveLogits but merges `extra` keys into the top-level object.
void SaveLogits(const LogitSequence& seq, const std::filesystem::path& path,
                const nlohmann::json& extra);

struct ManifestEntry {
  std::filesystem::path path;  // already resolved
  Label label;
  bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

DatasetManifest LoadManifest(const std::filesystem::path& path);
/// Writes entries with paths relative to the manifest's directory when
/// possible.
void SaveManifest(const DatasetManifest& manifest,
                  const std::filesystem::path& path);

}  // namespace lnoise

#endif  // LNOISE_LOGIT_IO_H_
