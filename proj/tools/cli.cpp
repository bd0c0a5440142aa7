// Copyright 2026 The rtbeat Authors
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

#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtbeat/bench.hpp"
#include "rtbeat/error.hpp"
#include "rtbeat/eval.hpp"
#include "rtbeat/io.hpp"
#include "rtbeat/synth.hpp"
#include "rtbeat/tracker.hpp"

namespace rtbeat::cli {

namespace {

constexpr const char *kMethodList = "default|salience|past|combined|online-dbn|offline-dbn";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Method method_or_usage(const std::string &name)
{
  try {
    return parse_method(name);
  } catch (const InvalidArgument &) {
    throw UsageError("unknown method '" + name + "' (expected " + kMethodList + ")");
  }
}

int run_track(const std::string &activations, const std::string &method,
              const std::string &config_path, std::optional<std::uint64_t> seed,
              const std::string &out_path)
{
  TrackerConfig cfg;
  if (!config_path.empty()) {
    cfg = read_config(config_path);
  }
  if (!method.empty()) {
    cfg.method = method_or_usage(method);
  }
  if (seed) {
    cfg.seed = *seed;
  }
  const auto file = read_activations(activations);
  cfg.fps = file.fps;
  const auto events = track(file.frames, cfg);
  write_events(out_path, events);
  return kExitOk;
}

int run_eval(const std::string &est_path, const std::string &ref_path,
             std::optional<double> tolerance, std::optional<double> skip, std::ostream &out)
{
  const auto est = read_annotations(est_path);
  const auto ref = read_annotations(ref_path);
  std::vector<BeatEvent> events;
  std::size_t d = 0;
  for (double t : est.beats) {
    while (d < est.downbeats.size() && est.downbeats[d] < t) {
      ++d;
    }
    events.push_back({t, d < est.downbeats.size() && est.downbeats[d] == t, 0.0, 0});
  }
  std::vector<double> tolerances(std::begin(kDefaultTolerances), std::end(kDefaultTolerances));
  std::vector<double> skips(std::begin(kDefaultSkips), std::end(kDefaultSkips));
  if (tolerance) {
    tolerances = {*tolerance};
  }
  if (skip) {
    skips = {*skip};
  }
  out << format_table(evaluate_clip(events, ref, tolerances, skips));
  return kExitOk;
}

int run_synth(const std::string &ann_path, int fps, double noise, std::uint64_t seed,
              double sigma, double height, double duration, const std::string &out_path)
{
  auto spec = synth_spec_from(read_annotations(ann_path));
  spec.fps = fps;
  spec.noise = noise;
  spec.seed = seed;
  spec.sigma = sigma;
  spec.height = height;
  spec.duration = duration;
  write_activations(out_path, synthesize_activations(spec));
  return kExitOk;
}

int run_bench_cmd(const std::string &corpus, const std::vector<std::string> &methods,
                  const std::vector<std::uint64_t> &seeds, const std::string &config_path,
                  std::size_t threads, std::ostream &out)
{
  BenchOptions opts;
  if (!config_path.empty()) {
    opts.base = read_config(config_path);
  }
  for (const auto &m : methods) {
    opts.methods.push_back(method_or_usage(m));
  }
  if (opts.methods.empty()) {
    opts.methods.assign(all_methods().begin(), all_methods().end());
  }
  if (!seeds.empty()) {
    opts.seeds = seeds;
  }
  opts.threads = threads;
  const auto clips = load_corpus(corpus);
  if (clips.empty()) {
    throw IoError("no <name>.act / <name>.beats pairs found in '" + corpus + "'");
  }
  out << format_report(run_bench(clips, opts));
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Causal beat and downbeat tracking with dynamic particle filtering"};
  app.require_subcommand(1);

  auto *track_cmd = app.add_subcommand("track", "Track beats in an activation file");
  std::string activations, method, config_path, out_path;
  std::optional<std::uint64_t> seed;
  track_cmd->add_option("--activations", activations, "Activation file ('# fps=<int>' header)")->required();
  track_cmd->add_option("--method", method, std::string(kMethodList) + " (default: default)");
  track_cmd->add_option("--config", config_path, "JSON tracker configuration");
  track_cmd->add_option("--seed", seed, "Random seed");
  track_cmd->add_option("--out", out_path, "Output event file")->required();

  auto *eval_cmd = app.add_subcommand("eval", "Score estimated beats against a reference");
  std::string est_path, ref_path;
  std::optional<double> tolerance, skip;
  eval_cmd->add_option("--est", est_path, "Estimated events")->required();
  eval_cmd->add_option("--ref", ref_path, "Reference annotations")->required();
  eval_cmd->add_option("--tolerance", tolerance, "Match tolerance in seconds");
  eval_cmd->add_option("--skip", skip, "Ignore events before this time (s)");

  auto *synth_cmd = app.add_subcommand("synth", "Render synthetic activations from annotations");
  std::string ann_path, synth_out;
  int fps = 50;
  double noise = 0.05, sigma = 0.04, height = 0.95, duration = 0.0;
  std::uint64_t synth_seed = 0;
  synth_cmd->add_option("--ann", ann_path, "Annotation file")->required();
  synth_cmd->add_option("--fps", fps, "Frame rate")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise", noise, "Uniform noise amplitude")->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", synth_seed, "Noise seed");
  synth_cmd->add_option("--sigma", sigma, "Peak width (s)")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--height", height, "Peak height")->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--duration", duration, "Length in seconds (default: last beat + 1 s)");
  synth_cmd->add_option("--out", synth_out, "Output activation file")->required();

  auto *bench_cmd = app.add_subcommand("bench", "Compare methods over a corpus directory");
  std::string corpus, bench_config;
  std::vector<std::string> methods;
  std::vector<std::uint64_t> seeds;
  std::size_t threads = 0;
  bench_cmd->add_option("--corpus", corpus, "Directory of <name>.act + <name>.beats pairs")->required();
  bench_cmd->add_option("--methods", methods, "Comma-separated methods (default: all)")->delimiter(',');
  bench_cmd->add_option("--seeds", seeds, "Comma-separated seeds (default: 0)")->delimiter(',');
  bench_cmd->add_option("--config", bench_config, "JSON tracker configuration");
  bench_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");

  auto *corpus_cmd = app.add_subcommand("corpus", "Generate a synthetic benchmark corpus");
  CorpusOptions corpus_opts;
  std::string corpus_out;
  corpus_cmd->add_option("--out", corpus_out, "Output directory")->required();
  corpus_cmd->add_option("--clips", corpus_opts.clips, "Number of clips");
  corpus_cmd->add_option("--duration", corpus_opts.duration, "Clip length (s)");
  corpus_cmd->add_option("--noise", corpus_opts.noise, "Noise level")->check(CLI::Range(0.0, 1.0));
  corpus_cmd->add_option("--seed", corpus_opts.seed, "Corpus seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*track_cmd) {
      return run_track(activations, method, config_path, seed, out_path);
    }
    if (*eval_cmd) {
      return run_eval(est_path, ref_path, tolerance, skip, out);
    }
    if (*synth_cmd) {
      return run_synth(ann_path, fps, noise, synth_seed, sigma, height, duration, synth_out);
    }
    if (*bench_cmd) {
      return run_bench_cmd(corpus, methods, seeds, bench_config, threads, out);
    }
    if (*corpus_cmd) {
      save_corpus(corpus_out, generate_corpus(corpus_opts));
      return kExitOk;
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace rtbeat::cli
