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

#include "lnoise/ctc_decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "lnoise/kernels.h"

namespace lnoise {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Prefix trie. Node 0 is the empty prefix; every other node is one label
// string, so merging collapsed prefixes is a lookup.
class PrefixTrie {
 public:
  PrefixTrie() { nodes_.push_back({-1, -1, {}}); }

  int Child(int node, int token) {
    for (const auto& [tok, child] : nodes_[node].children) {
      if (tok == token) return child;
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({node, token, {}});
    nodes_[node].children.emplace_back(token, id);
    return id;
  }

  int last_token(int node) const { return nodes_[node].token; }
  std::size_t size() const { return nodes_.size(); }

  std::string Text(int node, const Alphabet& alphabet) const {
    std::vector<std::size_t> path;
    for (int n = node; n > 0; n = nodes_[n].parent) {
      path.push_back(static_cast<std::size_t>(nodes_[n].token));
    }
    std::reverse(path.begin(), path.end());
    return alphabet.Spell(path);
  }

 private:
  struct Node {
    int parent;
    int token;
    std::vector<std::pair<int, int>> children;
  };
  std::vector<Node> nodes_;
};

struct BeamEntry {
  int node;
  double log_blank;     // paths ending in blank
  double log_nonblank;  // paths ending in the prefix's last token
  double total() const { return LogAdd(log_blank, log_nonblank); }
};

}  // namespace

std::string_view DecoderKindName(DecoderKind kind) {
  return kind == DecoderKind::kGreedy ? "greedy" : "beam";
}

DecoderKind ParseDecoderKind(std::string_view name) {
  if (name == "greedy") return DecoderKind::kGreedy;
  if (name == "beam") return DecoderKind::kBeam;
  throw Error(ErrorKind::kInvalidArgument, fmt::format("decoder '{}'", name));
}

std::vector<double> LogSoftmaxFrame(std::span<const double> frame) {
  const double m = kernels::Active().max_value(frame);
  double sum = 0.0;
  for (double x : frame) sum += std::exp(x - m);
  const double log_norm = m + std::log(sum);
  std::vector<double> out(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out[i] = frame[i] - log_norm;
  return out;
}

Transcription GreedyDecode(const LogitSequence& seq) {
  const std::size_t blank = seq.alphabet().blank_index();
  std::vector<std::size_t> best(seq.num_frames());
  kernels::Active().argmax_rows(seq.scores(), seq.vocab_size(), best);

  std::vector<std::size_t> labels;
  std::size_t prev = blank;
  for (std::size_t tok : best) {
    if (tok != blank && tok != prev) labels.push_back(tok);
    prev = tok;
  }
  return {seq.alphabet().Spell(labels)};
}

Transcription BeamSearchDecode(const LogitSequence& seq,
                               std::size_t beam_width) {
  if (beam_width < 1) {
    throw Error(ErrorKind::kInvalidArgument, "beam_width must be >= 1");
  }
  const Alphabet& alphabet = seq.alphabet();
  const std::size_t vocab = seq.vocab_size();
  const int blank = static_cast<int>(alphabet.blank_index());

  PrefixTrie trie;
  std::vector<BeamEntry> beam{{0, 0.0, kNegInf}};

  // Scratch indexed by trie node; `touched` lists the nodes reached at t.
  std::vector<double> next_blank;
  std::vector<double> next_nonblank;
  std::vector<int> touched;

  auto ranks_before = [&](const BeamEntry& a, double sa, const BeamEntry& b,
                          double sb) {
    if (sa != sb) return sa > sb;
    return trie.Text(a.node, alphabet) < trie.Text(b.node, alphabet);
  };

  for (std::size_t t = 0; t < seq.num_frames(); ++t) {
    const std::vector<double> logp = LogSoftmaxFrame(seq.frame(t));
    touched.clear();

    auto touch = [&](int node) {
      if (static_cast<std::size_t>(node) >= next_blank.size()) {
        next_blank.resize(trie.size(), kNegInf);
        next_nonblank.resize(trie.size(), kNegInf);
      }
      if (next_blank[node] == kNegInf && next_nonblank[node] == kNegInf) {
        touched.push_back(node);
      }
    };

    for (const BeamEntry& e : beam) {
      const double total = e.total();
      touch(e.node);
      next_blank[e.node] = LogAdd(next_blank[e.node], total + logp[blank]);

      const int last = trie.last_token(e.node);
      for (std::size_t c = 0; c < vocab; ++c) {
        const int tok = static_cast<int>(c);
        if (tok == blank) continue;
        const double lp = logp[c];
        const int child = trie.Child(e.node, tok);
        touch(child);
        if (tok == last) {
          // A repeat only extends the prefix when a blank separates it.
          next_nonblank[child] =
              LogAdd(next_nonblank[child], e.log_blank + lp);
          next_nonblank[e.node] =
              LogAdd(next_nonblank[e.node], e.log_nonblank + lp);
        } else {
          next_nonblank[child] = LogAdd(next_nonblank[child], total + lp);
        }
      }
    }

    std::vector<BeamEntry> candidates;
    candidates.reserve(touched.size());
    for (int node : touched) {
      candidates.push_back({node, next_blank[node], next_nonblank[node]});
      next_blank[node] = kNegInf;
      next_nonblank[node] = kNegInf;
    }
    std::vector<double> scores(candidates.size());
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      scores[i] = candidates[i].total();
      order[i] = i;
    }
    const std::size_t keep = std::min(beam_width, candidates.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return ranks_before(candidates[a], scores[a],
                                            candidates[b], scores[b]);
                      });
    beam.clear();
    for (std::size_t i = 0; i < keep; ++i) beam.push_back(candidates[order[i]]);
  }

  // The beam is already ordered best-first.
  return {trie.Text(beam.front().node, alphabet)};
}

Transcription Decode(const LogitSequence& seq, const DecoderConfig& config) {
  if (config.kind == DecoderKind::kGreedy) return GreedyDecode(seq);
  return BeamSearchDecode(seq, config.beam_width);
}

}  // namespace lnoise
