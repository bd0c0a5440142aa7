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

#ifndef RTBEAT__BENCH_HPP_
#define RTBEAT__BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rtbeat/eval.hpp"
#include "rtbeat/io.hpp"
#include "rtbeat/tracker.hpp"

namespace rtbeat {

// Synthetic method-comparison corpus.
struct CorpusOptions {
  std::size_t clips = 200;
  double duration = 30.0;
  double min_bpm = 60.0;
  double max_bpm = 180.0;
  double change_fraction = 0.3;   // share of clips with one tempo change
  double change_min = 0.10;       // relative tempo change bounds
  double change_max = 0.25;
  double change_earliest = 10.0;  // seconds
  double change_latest = 20.0;
  std::vector<int> meters{3, 4};
  double noise = 0.1;
  int fps = 50;
  std::uint64_t seed = 0;
};

struct BenchClip {
  std::string name;
  ActivationFile activations;
  Annotation annotation;
  bool tempo_change = false;
};

std::vector<BenchClip> generate_corpus(const CorpusOptions &options);

// Writes <name>.act and <name>.beats per clip.
void save_corpus(const std::filesystem::path &dir, std::span<const BenchClip> clips);
// Loads every <stem>.act that has a matching <stem>.beats, sorted by stem.
std::vector<BenchClip> load_corpus(const std::filesystem::path &dir);

struct BenchOptions {
  std::vector<Method> methods;
  std::vector<std::uint64_t> seeds{0};
  TrackerConfig base;
  std::vector<double> tolerances{0.07, 0.2};
  std::vector<double> skips{0.0, 5.0};
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct MethodResult {
  Method method = Method::Default;
  // Clip-major, seed-minor.
  std::vector<EvalTable> runs;
  CorpusTable overall;
  FilterStats stats;
  double seconds = 0.0;  // wall time spent in tracking
};

struct BenchReport {
  std::size_t clips = 0;
  std::size_t seeds = 0;
  std::vector<MethodResult> methods;

  const MethodResult &result(Method m) const;
  // Corpus table restricted to the clips selected by `keep(clip_index)`.
  CorpusTable subset(Method m, const std::function<bool(std::size_t)> &keep) const;
};

// Runs every (method, clip, seed). Seed-independent methods (the DBN
// baselines) are tracked once per clip and the result reused for each seed.
BenchReport run_bench(std::span<const BenchClip> clips, const BenchOptions &options);

// Method rows x {No Skip, Skip First 5 Seconds} x {Beat, Downbeat} x tolerance,
// F1 in percent with two decimals.
std::string format_report(const BenchReport &report);

}  // namespace rtbeat

#endif  // RTBEAT__BENCH_HPP_
