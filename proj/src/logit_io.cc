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

#include "lnoise/logit_io.h"

#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <fmt/format.h>

namespace lnoise {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedFile, what);
}

const json& Require(const json& j, const char* key, const char* context) {
  auto it = j.find(key);
  if (it == j.end()) Malformed(fmt::format("{}: missing key '{}'", context, key));
  return *it;
}

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteAll(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIoError, fmt::format("cannot write {}", path.string()));
  }
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::kIoError, fmt::format("write failed: {}", path.string()));
}

}  // namespace

json LogitsToJson(const LogitSequence& seq) {
  json j;
  j["id"] = seq.id();
  j["alphabet"] = seq.alphabet().tokens();
  j["blank_index"] = seq.alphabet().blank_index();
  json frames = json::array();
  for (std::size_t t = 0; t < seq.num_frames(); ++t) {
    auto f = seq.frame(t);
    frames.push_back(std::vector<double>(f.begin(), f.end()));
  }
  j["frames"] = std::move(frames);
  if (seq.label()) j["label"] = std::string(LabelName(*seq.label()));
  if (seq.transcript()) j["transcript"] = *seq.transcript();
  return j;
}

LogitSequence LogitsFromJson(const json& j) {
  constexpr const char* kCtx = "logit file";
  if (!j.is_object()) Malformed("logit file must be a JSON object");

  const json& id = Require(j, "id", kCtx);
  const json& alphabet = Require(j, "alphabet", kCtx);
  const json& blank = Require(j, "blank_index", kCtx);
  const json& frames = Require(j, "frames", kCtx);
  if (!id.is_string()) Malformed("'id' must be a string");
  if (!alphabet.is_array()) Malformed("'alphabet' must be an array");
  if (!blank.is_number_integer() || blank.get<long long>() < 0) {
    Malformed("'blank_index' must be a non-negative integer");
  }
  if (!frames.is_array() || frames.empty()) {
    Malformed("'frames' must be a non-empty array");
  }

  std::vector<std::string> tokens;
  for (const auto& tok : alphabet) {
    if (!tok.is_string()) Malformed("alphabet entries must be strings");
    tokens.push_back(tok.get<std::string>());
  }
  std::optional<Alphabet> alpha;
  try {
    alpha.emplace(std::move(tokens), blank.get<std::size_t>());
  } catch (const Error& e) {
    Malformed(e.what());
  }

  const std::size_t v = alpha->size();
  std::vector<double> scores;
  scores.reserve(frames.size() * v);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const json& row = frames[t];
    if (!row.is_array()) Malformed(fmt::format("frame {} is not an array", t));
    if (row.size() != v) {
      throw Error(ErrorKind::kDimensionMismatch,
                  fmt::format("frame {} has {} scores, alphabet has {}", t,
                              row.size(), v));
    }
    for (const auto& x : row) {
      if (x.is_null()) {
        // NaN/inf serialize as null.
        throw Error(ErrorKind::kNonFiniteScore,
                    fmt::format("frame {} holds a non-numeric score", t));
      }
      if (!x.is_number()) Malformed(fmt::format("frame {} holds a non-number", t));
      scores.push_back(x.get<double>());
    }
  }

  std::optional<Label> label;
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) Malformed("'label' must be a string");
    label = ParseLabel(it->get<std::string>());
  }
  std::optional<std::string> transcript;
  if (auto it = j.find("transcript"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) Malformed("'transcript' must be a string");
    transcript = it->get<std::string>();
  }
  return LogitSequence(id.get<std::string>(), std::move(*alpha),
                       std::move(scores), label, std::move(transcript));
}

LogitSequence LoadLogits(const fs::path& path) {
  const std::string text = ReadAll(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::out_of_range& e) {
    // Literals like 1e999 overflow double during parsing.
    if (e.id == 406) {
      throw Error(ErrorKind::kNonFiniteScore,
                  fmt::format("{}: {}", path.string(), e.what()));
    }
    Malformed(fmt::format("{}: {}", path.string(), e.what()));
  } catch (const json::exception&) {
    Malformed(fmt::format("{}: invalid JSON", path.string()));
  }
  return LogitsFromJson(j);
}

void SaveLogits(const LogitSequence& seq, const fs::path& path) {
  WriteAll(path, LogitsToJson(seq).dump() + "\n");
}

void SaveLogits(const LogitSequence& seq, const fs::path& path,
                const json& extra) {
  json j = LogitsToJson(seq);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  WriteAll(path, j.dump() + "\n");
}

DatasetManifest LoadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, fmt::format("cannot open {}", path.string()));
  const fs::path base = path.parent_path();

  DatasetManifest manifest;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      Malformed(fmt::format("{}:{}: not a JSON object", path.string(), lineno));
    }
    auto p = j.find("path");
    auto l = j.find("label");
    if (p == j.end() || !p->is_string() || l == j.end() || !l->is_string()) {
      Malformed(fmt::format("{}:{}: needs string 'path' and 'label'", path.string(),
                            lineno));
    }
    fs::path entry = p->get<std::string>();
    if (entry.is_relative()) entry = base / entry;
    manifest.entries.push_back({entry, ParseLabel(l->get<std::string>())});
  }
  return manifest;
}

void SaveManifest(const DatasetManifest& manifest, const fs::path& path) {
  const fs::path base = path.parent_path();
  std::string out;
  for (const auto& e : manifest.entries) {
    fs::path rel = e.path;
    if (!base.empty()) {
      auto r = e.path.lexically_relative(base);
      if (!r.empty() && *r.begin() != "..") rel = r;
    }
    json j;
    j["path"] = rel.generic_string();
    j["label"] = std::string(LabelName(e.label));
    out += j.dump();
    out += '\n';
  }
  WriteAll(path, out);
}

}  // namespace lnoise
