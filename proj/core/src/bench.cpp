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

#include "rtbeat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "rtbeat/error.hpp"
#include "rtbeat/random.hpp"
#include "rtbeat/synth.hpp"

namespace rtbeat {

namespace {

double uniform_in(Rng &rng, double lo, double hi)
{
  return lo + (hi - lo) * uniform01(rng);
}

struct WorkItem {
  std::size_t method;
  std::size_t clip;
  std::size_t seed;
};

}  // namespace

std::vector<BenchClip> generate_corpus(const CorpusOptions &o)
{
  if (o.clips == 0 || !(o.duration > 0.0) || !(o.min_bpm > 0.0) || o.max_bpm < o.min_bpm ||
      o.meters.empty()) {
    throw InvalidArgument("invalid corpus options");
  }
  Rng rng(o.seed);
  std::vector<BenchClip> clips;
  clips.reserve(o.clips);
  for (std::size_t i = 0; i < o.clips; ++i) {
    BenchClip clip;
    char name[32];
    std::snprintf(name, sizeof(name), "clip_%03zu", i);
    clip.name = name;
    // Spread the tempo-change clips evenly so the share is exact.
    clip.tempo_change = std::floor(static_cast<double>(i + 1) * o.change_fraction) >
                        std::floor(static_cast<double>(i) * o.change_fraction);

    const double bpm0 = uniform_in(rng, o.min_bpm, o.max_bpm);
    double bpm1 = bpm0;
    double change_at = o.duration + 1.0;
    if (clip.tempo_change) {
      const double ratio = uniform_in(rng, o.change_min, o.change_max);
      const bool up = (rng() & 1) != 0;
      bpm1 = bpm0 * (up ? 1.0 + ratio : 1.0 - ratio);
      if (bpm1 > o.max_bpm || bpm1 < o.min_bpm) {
        bpm1 = bpm0 * (up ? 1.0 - ratio : 1.0 + ratio);
      }
      bpm1 = std::clamp(bpm1, o.min_bpm, o.max_bpm);
      change_at = uniform_in(rng, o.change_earliest, o.change_latest);
    }
    const int meter = o.meters[uniform_below(rng, o.meters.size())];
    const int first_position = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(meter)));
    double t = uniform_in(rng, 0.0, 60.0 / bpm0);

    SynthSpec spec;
    int k = 0;
    while (t < o.duration) {
      spec.beats.push_back(t);
      spec.downbeat_flags.push_back((k + first_position) % meter == 0);
      t += 60.0 / (t >= change_at ? bpm1 : bpm0);
      ++k;
    }
    spec.noise = o.noise;
    spec.fps = o.fps;
    spec.duration = o.duration;
    spec.seed = o.seed * 1000003ULL + i;
    clip.activations = synthesize_activations(spec);
    clip.annotation = spec.annotation();
    clips.push_back(std::move(clip));
  }
  return clips;
}

void save_corpus(const std::filesystem::path &dir, std::span<const BenchClip> clips)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  }
  for (const auto &clip : clips) {
    write_activations(dir / (clip.name + ".act"), clip.activations);
    write_annotations(dir / (clip.name + ".beats"), clip.annotation);
  }
}

std::vector<BenchClip> load_corpus(const std::filesystem::path &dir)
{
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("'" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> acts;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".act") {
      acts.push_back(entry.path());
    }
  }
  std::sort(acts.begin(), acts.end());
  std::vector<BenchClip> clips;
  for (const auto &act : acts) {
    auto beats = act;
    beats.replace_extension(".beats");
    if (!std::filesystem::exists(beats)) {
      continue;
    }
    BenchClip clip;
    clip.name = act.stem().string();
    clip.activations = read_activations(act);
    clip.annotation = read_annotations(beats);
    clips.push_back(std::move(clip));
  }
  return clips;
}

const MethodResult &BenchReport::result(Method m) const
{
  for (const auto &r : methods) {
    if (r.method == m) {
      return r;
    }
  }
  throw InvalidArgument("method '" + std::string(to_string(m)) + "' was not benchmarked");
}

CorpusTable BenchReport::subset(Method m, const std::function<bool(std::size_t)> &keep) const
{
  const auto &r = result(m);
  std::vector<EvalTable> picked;
  for (std::size_t c = 0; c < clips; ++c) {
    if (!keep(c)) {
      continue;
    }
    for (std::size_t s = 0; s < seeds; ++s) {
      picked.push_back(r.runs[c * seeds + s]);
    }
  }
  return aggregate(picked);
}

BenchReport run_bench(std::span<const BenchClip> clips, const BenchOptions &options)
{
  if (clips.empty() || options.methods.empty() || options.seeds.empty()) {
    throw InvalidArgument("bench needs at least one clip, method and seed");
  }
  const std::size_t n_seeds = options.seeds.size();
  BenchReport report;
  report.clips = clips.size();
  report.seeds = n_seeds;
  report.methods.resize(options.methods.size());

  std::vector<WorkItem> work;
  for (std::size_t m = 0; m < options.methods.size(); ++m) {
    report.methods[m].method = options.methods[m];
    report.methods[m].runs.resize(clips.size() * n_seeds);
    const bool seeded = is_particle_method(options.methods[m]);
    for (std::size_t c = 0; c < clips.size(); ++c) {
      for (std::size_t s = 0; s < (seeded ? n_seeds : 1); ++s) {
        work.push_back({m, c, s});
      }
    }
  }

  std::vector<FilterStats> item_stats(work.size());
  std::vector<double> item_seconds(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t w = next++; w < work.size(); w = next++) {
      const auto &item = work[w];
      const auto &clip = clips[item.clip];
      TrackerConfig cfg = options.base;
      cfg.method = options.methods[item.method];
      cfg.seed = options.seeds[item.seed];
      cfg.fps = clip.activations.fps;

      const auto start = std::chrono::steady_clock::now();
      Tracker tracker(cfg);
      std::vector<BeatEvent> events;
      for (const auto &frame : clip.activations.frames) {
        auto ev = tracker.step_frame(frame);
        events.insert(events.end(), ev.begin(), ev.end());
      }
      auto tail = tracker.finalize();
      events.insert(events.end(), tail.begin(), tail.end());
      item_seconds[w] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      item_stats[w] = tracker.stats();

      auto table = evaluate_clip(events, clip.annotation, options.tolerances, options.skips);
      auto &runs = report.methods[item.method].runs;
      if (is_particle_method(cfg.method)) {
        runs[item.clip * n_seeds + item.seed] = std::move(table);
      } else {
        for (std::size_t s = 0; s < n_seeds; ++s) {
          runs[item.clip * n_seeds + s] = table;
        }
      }
    }
  };

  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, work.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
    for (auto &t : pool) {
      t.join();
    }
  }

  for (std::size_t w = 0; w < work.size(); ++w) {
    auto &r = report.methods[work[w].method];
    r.stats.steps += item_stats[w].steps;
    r.stats.injected += item_stats[w].injected;
    r.stats.conservation_violations += item_stats[w].conservation_violations;
    r.stats.decodes += item_stats[w].decodes;
    r.seconds += item_seconds[w];
  }
  for (auto &r : report.methods) {
    r.overall = aggregate(r.runs);
  }
  return report;
}

std::string format_report(const BenchReport &report)
{
  std::ostringstream os;
  char buf[256];
  if (report.methods.empty()) {
    return {};
  }
  const auto &layout = report.methods.front().overall.cells;
  std::snprintf(buf, sizeof(buf), "F1 (%%) over %zu clips x %zu seeds\n", report.clips, report.seeds);
  os << buf;
  std::snprintf(buf, sizeof(buf), "%-12s", "method");
  os << buf;
  for (const auto &c : layout) {
    char head[64];
    std::snprintf(head, sizeof(head), "%s%s(%.0fms)", c.skip > 0.0 ? "S:" : "",
                  c.kind == EventKind::Beat ? "Beat" : "Down", c.tolerance * 1000.0);
    std::snprintf(buf, sizeof(buf), " %14s", head);
    os << buf;
  }
  os << '\n';
  for (const auto &r : report.methods) {
    std::snprintf(buf, sizeof(buf), "%-12s", std::string(to_string(r.method)).c_str());
    os << buf;
    for (const auto &c : r.overall.cells) {
      std::snprintf(buf, sizeof(buf), " %14.2f", c.mean_f1_percent);
      os << buf;
    }
    os << '\n';
  }
  os << "(S: = skip first " << (layout.empty() ? 0.0 : layout.back().skip) << " s)\n";
  return os.str();
}

}  // namespace rtbeat
