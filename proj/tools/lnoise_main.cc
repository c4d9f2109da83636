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

// lnoise: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include "lnoise/calibration.h"
#include "lnoise/core.h"
#include "lnoise/ctc_decoder.h"
#include "lnoise/detector.h"
#include "lnoise/inversion.h"
#include "lnoise/logit_io.h"
#include "lnoise/noise.h"
#include "lnoise/report.h"
#include "lnoise/synth.h"

namespace fs = std::filesystem;
using namespace lnoise;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string output;  // empty: standard output
};

struct DecoderFlags {
  std::string kind = "beam";
  std::size_t beam_width = 32;

  DecoderConfig Config() const {
    return {ParseDecoderKind(kind), beam_width};
  }
};

void AddDecoderFlags(CLI::App* cmd, DecoderFlags& flags) {
  cmd->add_option("--decoder", flags.kind, "greedy or beam")
      ->check(CLI::IsMember({"greedy", "beam"}))
      ->capture_default_str();
  cmd->add_option("--beam-width", flags.beam_width, "Beam width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

struct DetectorFlags {
  double std = 3.0;
  double threshold = 60.0;
  std::size_t instances = 4;
  DecoderFlags decoder;
};

void AddDetectorFlags(CLI::App* cmd, DetectorFlags& flags) {
  cmd->add_option("--std", flags.std, "Noise standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--threshold", flags.threshold, "CER threshold (percent)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--instances", flags.instances, "Noised instances per input")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  AddDecoderFlags(cmd, flags.decoder);
}

DetectorConfig MakeDetectorConfig(const DetectorFlags& f, const GlobalFlags& g) {
  DetectorConfig c;
  c.noise = NoiseSpec::Gaussian(f.std);
  c.cer_threshold = f.threshold;
  c.n_instances = f.instances;
  c.decoder = f.decoder.Config();
  c.seeds.master_seed = g.seed;
  return c;
}

void Emit(const GlobalFlags& g, const std::string& text) {
  if (g.output.empty() || g.output == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + g.output);
  out << text;
  if (!out) throw Error(ErrorKind::kIoError, "write failed: " + g.output);
}

bool EmitsToStdout(const GlobalFlags& g) {
  return g.output.empty() || g.output == "-";
}

// Sequences grouped by manifest label, benign first.
std::vector<std::pair<std::string, std::vector<LogitSequence>>> LoadGroups(
    const std::string& manifest_path, const std::vector<std::string>& inputs,
    const std::string& wave_type, std::size_t jobs) {
  std::vector<std::pair<std::string, std::vector<LogitSequence>>> groups;
  if (!manifest_path.empty()) {
    const DatasetManifest m = LoadManifest(manifest_path);
    for (Label label : {Label::kBenign, Label::kAdversarial}) {
      DatasetManifest part;
      for (const auto& e : m.entries) {
        if (e.label == label) part.entries.push_back(e);
      }
      if (!part.entries.empty()) {
        groups.emplace_back(std::string(LabelName(label)), LoadAll(part, jobs));
      }
    }
  }
  if (!inputs.empty()) {
    std::vector<LogitSequence> seqs;
    for (const auto& p : inputs) seqs.push_back(LoadLogits(p));
    groups.emplace_back(wave_type, std::move(seqs));
  }
  if (groups.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no input sequences (use --manifest or --input)");
  }
  return groups;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logit-noising detector for audio adversarial examples"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("-o,--output,--out", g.output,
                 "Output file (default: standard output)");

  // decode
  auto* decode = app.add_subcommand("decode", "Print the transcription of a logit file");
  std::string decode_input;
  DecoderFlags decode_flags;
  decode->add_option("--input", decode_input, "Logit file")->required();
  AddDecoderFlags(decode, decode_flags);

  // noise
  auto* noise = app.add_subcommand("noise", "Write a noised copy of a logit file");
  std::string noise_input;
  double noise_std = 3.0;
  std::uint64_t noise_instance = 0;
  noise->add_option("--input", noise_input, "Logit file")->required();
  noise->add_option("--std", noise_std, "Noise standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  noise->add_option("--instance", noise_instance, "Instance index")
      ->capture_default_str();

  // detect
  auto* detect = app.add_subcommand("detect", "Classify one logit file");
  std::string detect_input;
  DetectorFlags detect_flags;
  detect->add_option("--input", detect_input, "Logit file")->required();
  AddDetectorFlags(detect, detect_flags);

  // detect-batch
  auto* batch = app.add_subcommand("detect-batch", "Classify every entry of a manifest");
  std::string batch_manifest;
  DetectorFlags batch_flags;
  batch->add_option("--manifest", batch_manifest, "JSONL manifest")->required();
  AddDetectorFlags(batch, batch_flags);

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Grid search over (std, CER threshold)");
  std::string benign_manifest;
  std::string adv_manifest;
  std::string std_grid_text = "2,3,4,5";
  std::string thr_grid_text = "10:130:10";
  std::size_t cal_instances = 4;
  double fpr_max = 0.05;
  DecoderFlags cal_decoder;
  calibrate->add_option("--benign-manifest", benign_manifest)->required();
  calibrate->add_option("--adv-manifest", adv_manifest)->required();
  calibrate->add_option("--std-grid", std_grid_text, "start:stop:step or a,b,c")
      ->capture_default_str();
  calibrate->add_option("--threshold-grid", thr_grid_text, "start:stop:step or a,b,c")
      ->capture_default_str();
  calibrate->add_option("--instances", cal_instances)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  calibrate->add_option("--fpr-max", fpr_max, "FPR budget")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  AddDecoderFlags(calibrate, cal_decoder);

  // gaps
  auto* gaps = app.add_subcommand("gaps", "Histogram of 1-k logit gaps (CSV)");
  std::string gaps_manifest;
  std::vector<std::string> gaps_inputs;
  std::string gaps_wave = "input";
  int gaps_k_max = 3;
  bool gaps_skip_blank = false;
  double gaps_bin = kHistogramBinWidth;
  gaps->add_option("--manifest", gaps_manifest, "Manifest; groups by label");
  gaps->add_option("--input", gaps_inputs, "Logit files (one wave type)");
  gaps->add_option("--wave-type", gaps_wave, "Name for --input files")
      ->capture_default_str();
  gaps->add_option("--k-max", gaps_k_max, "Largest rank k")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  gaps->add_flag("--skip-blank", gaps_skip_blank, "Ignore frames whose argmax is blank");
  gaps->add_option("--bin-width", gaps_bin)->check(CLI::PositiveNumber)->capture_default_str();

  // invprob
  auto* invprob = app.add_subcommand("invprob", "Total inversion probability per std (CSV)");
  std::string inv_manifest;
  std::vector<std::string> inv_inputs;
  std::string inv_wave = "input";
  std::string inv_grid_text = "1,2,3,4,5,6";
  int inv_k_max = 5;
  bool inv_skip_blank = false;
  std::uint64_t mc_trials = 0;
  invprob->add_option("--manifest", inv_manifest, "Manifest; groups by label");
  invprob->add_option("--input", inv_inputs, "Logit files (one wave type)");
  invprob->add_option("--wave-type", inv_wave)->capture_default_str();
  invprob->add_option("--std-grid", inv_grid_text)->capture_default_str();
  invprob->add_option("--k-max", inv_k_max)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  invprob->add_flag("--skip-blank", inv_skip_blank);
  invprob->add_option("--mc-trials", mc_trials, "Monte Carlo trials per pairwise term (0: off)")
      ->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic logit dataset");
  std::string synth_profile = "both";
  std::size_t synth_count = 200;
  std::string synth_dir;
  SynthSpec spec;
  std::optional<double> gap_mean, gap_std, extra_gap, gap_floor;
  synth->add_option("--profile", synth_profile, "benign, adversarial or both")
      ->check(CLI::IsMember({"benign", "adversarial", "both"}))
      ->capture_default_str();
  synth->add_option("--count", synth_count, "Samples per profile")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--out-dir", synth_dir)->required();
  synth->add_option("--frames", spec.frames)->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--text", spec.target_text)->capture_default_str();
  synth->add_option("--blank-fraction", spec.blank_run_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--competitors", spec.competitor_ranks)->capture_default_str();
  synth->add_option("--gap-mean", gap_mean, "Override mean 1-2 gap");
  synth->add_option("--gap-std", gap_std, "Override 1-2 gap std");
  synth->add_option("--extra-gap", extra_gap, "Override extra gap per rank");
  synth->add_option("--floor", gap_floor, "Override gap floor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*decode) {
      const LogitSequence seq = LoadLogits(decode_input);
      Emit(g, Decode(seq, decode_flags.Config()).text + "\n");
    } else if (*noise) {
      const LogitSequence seq = LoadLogits(noise_input);
      const std::uint64_t effective = DeriveSeed(g.seed, seq.id(), noise_instance);
      const LogitSequence out =
          AddNoise(seq, NoiseSpec::Gaussian(noise_std), effective);
      nlohmann::json meta;
      meta["noise"] = {{"std", noise_std},
                       {"seed", g.seed},
                       {"instance", noise_instance},
                       {"effective_seed", effective}};
      nlohmann::json j = LogitsToJson(out);
      for (const auto& [k, v] : meta.items()) j[k] = v;
      Emit(g, j.dump() + "\n");
    } else if (*detect) {
      const DetectorConfig cfg = MakeDetectorConfig(detect_flags, g);
      const Verdict v = Detect(LoadLogits(detect_input), cfg);
      Emit(g, VerdictJson(v, cfg).dump() + "\n");
    } else if (*batch) {
      const DetectorConfig cfg = MakeDetectorConfig(batch_flags, g);
      const EvalReport report = DetectBatch(LoadManifest(batch_manifest), cfg, g.jobs);
      for (const auto& f : report.failures) {
        std::cerr << "warning: skipped " << f.path << ": " << f.message << "\n";
      }
      Emit(g, ResultsCsv(report.per_sample, g.seed));
      nlohmann::json summary = EvalSummaryJson(report);
      summary["config"] = DetectorConfigJson(cfg);
      (EmitsToStdout(g) ? std::cerr : std::cout) << summary.dump() << "\n";
    } else if (*calibrate) {
      GridSearchOptions opt;
      opt.std_grid = ParseGrid(std_grid_text);
      opt.threshold_grid = ParseGrid(thr_grid_text);
      opt.n_instances = cal_instances;
      opt.fpr_budget = fpr_max;
      opt.decoder = cal_decoder.Config();
      opt.seeds.master_seed = g.seed;
      opt.jobs = g.jobs;
      const CalibrationResult result =
          GridSearch(LoadManifest(benign_manifest), LoadManifest(adv_manifest), opt);
      Emit(g, CalibrationCsv(result.table));
      if (!result.best) {
        std::cerr << "NoFeasiblePair: no (std, threshold) pair has FPR <= "
                  << fpr_max << "\n";
        return kDataError;
      }
      nlohmann::json best = DetectorConfigJson(*result.best);
      for (const auto& row : result.table) {
        if (row.std == result.best->noise.std &&
            row.threshold == result.best->cer_threshold) {
          best["accuracy"] = row.counts.accuracy();
          best["fpr"] = row.counts.fpr();
          best["fnr"] = row.counts.fnr();
        }
      }
      std::cout << best.dump() << "\n";
    } else if (*gaps) {
      const auto groups = LoadGroups(gaps_manifest, gaps_inputs, gaps_wave, g.jobs);
      std::vector<HistogramSeries> series;
      for (const auto& [name, seqs] : groups) {
        for (int k = 2; k <= gaps_k_max; ++k) {
          const GapDistribution d =
              ComputeGapDistribution(seqs, k, gaps_skip_blank, name);
          series.push_back({name, k, GapHistogram(d, gaps_bin)});
        }
      }
      Emit(g, HistogramCsv(series));
    } else if (*invprob) {
      const auto groups = LoadGroups(inv_manifest, inv_inputs, inv_wave, g.jobs);
      const std::vector<double> grid = ParseGrid(inv_grid_text);
      std::vector<WaveGaps> waves;
      for (const auto& [name, seqs] : groups) {
        waves.push_back(ComputeWaveGaps(seqs, inv_k_max, inv_skip_blank, name));
      }
      const std::vector<PinvRow> rows = PinvCurve(waves, grid, inv_k_max);
      std::vector<PinvReportRow> report;
      for (const auto& row : rows) {
        PinvReportRow r{row, inv_k_max, std::nullopt, mc_trials};
        if (mc_trials > 0) {
          const WaveGaps* wave = nullptr;
          for (const auto& w : waves) {
            if (w.wave_type == row.wave_type) wave = &w;
          }
          std::vector<double> pairwise;
          for (int k = 2; k <= inv_k_max; ++k) {
            const std::string stream =
                fmt::format("{}/k{}/std{}", row.wave_type, k, row.std);
            pairwise.push_back(PairwiseInversionProbMc(wave->by_rank[k - 2],
                                                       NoiseSpec::Gaussian(row.std),
                                                       mc_trials,
                                                       DeriveSeed(g.seed, stream, 0))
                                   .probability);
          }
          r.p_total_mc = TotalInversionProb(pairwise);
        }
        report.push_back(r);
      }
      Emit(g, PinvCsv(report, mc_trials > 0, g.seed));
    } else if (*synth) {
      std::vector<std::string> profiles;
      if (synth_profile == "both") {
        profiles = {"benign", "adversarial"};
      } else {
        profiles = {synth_profile};
      }
      DatasetManifest combined;
      for (const auto& name : profiles) {
        SynthSpec s = spec;
        s.profile = ProfileByName(name);
        if (gap_mean) s.profile.gap_mean_k2 = *gap_mean;
        if (gap_std) s.profile.gap_std_k2 = *gap_std;
        if (extra_gap) s.profile.extra_gap_per_rank = *extra_gap;
        if (gap_floor) s.profile.floor = *gap_floor;
        const DatasetManifest m =
            GenerateDataset(s, synth_count, g.seed, synth_dir, g.jobs);
        combined.entries.insert(combined.entries.end(), m.entries.begin(),
                                m.entries.end());
      }
      const fs::path manifest_path = fs::path(synth_dir) / "manifest.jsonl";
      SaveManifest(combined, manifest_path);
      nlohmann::json summary;
      summary["manifest"] = manifest_path.string();
      summary["samples"] = combined.entries.size();
      summary["seed"] = g.seed;
      std::cout << summary.dump() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
