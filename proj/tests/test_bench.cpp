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


#include <gtest/gtest.h>

#include <filesystem>

#include "rtbeat/bench.hpp"
#include "rtbeat/error.hpp"

namespace rtbeat {
namespace {

CorpusOptions small_corpus()
{
  CorpusOptions o;
  o.clips = 10;
  o.duration = 12.0;
  o.change_earliest = 4.0;
  o.change_latest = 8.0;
  o.seed = 5;
  return o;
}

TEST(Corpus, MatchesOptions)
{
  const auto opt = small_corpus();
  const auto clips = generate_corpus(opt);
  ASSERT_EQ(clips.size(), 10u);
  std::size_t changes = 0;
  for (const auto &c : clips) {
    EXPECT_EQ(c.activations.fps, 50);
    EXPECT_EQ(c.activations.frames.size(), 600u);
    ASSERT_GE(c.annotation.beats.size(), 2u);
    EXPECT_FALSE(c.annotation.downbeats.empty());
    changes += c.tempo_change ? 1 : 0;
    for (std::size_t k = 1; k < c.annotation.beats.size(); ++k) {
      const double bpm = 60.0 / (c.annotation.beats[k] - c.annotation.beats[k - 1]);
      EXPECT_GE(bpm, opt.min_bpm - 1e-6);
      EXPECT_LE(bpm, opt.max_bpm + 1e-6);
    }
  }
  EXPECT_EQ(changes, 3u);
  EXPECT_EQ(clips[3].name, "clip_003");
}

TEST(Corpus, TempoChangeClipsChangeOnce)
{
  const auto clips = generate_corpus(small_corpus());
  for (const auto &c : clips) {
    const auto &b = c.annotation.beats;
    int jumps = 0;
    for (std::size_t k = 2; k < b.size(); ++k) {
      const double prev = b[k - 1] - b[k - 2];
      const double cur = b[k] - b[k - 1];
      if (std::abs(cur / prev - 1.0) > 0.05) {
        ++jumps;
      }
    }
    EXPECT_EQ(jumps, c.tempo_change ? 1 : 0) << c.name;
  }
}

TEST(Corpus, SaveLoadRoundTrip)
{
  const auto dir = std::filesystem::temp_directory_path() / "rtbeat_test_corpus";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto clips = generate_corpus(small_corpus());
  save_corpus(dir, clips);
  const auto back = load_corpus(dir);
  ASSERT_EQ(back.size(), clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    EXPECT_EQ(back[i].name, clips[i].name);
    EXPECT_EQ(back[i].activations.frames.size(), clips[i].activations.frames.size());
    EXPECT_EQ(back[i].annotation.beats.size(), clips[i].annotation.beats.size());
  }
  std::filesystem::remove_all(dir);
}

TEST(Bench, DeterministicAndComplete)
{
  auto opt = small_corpus();
  opt.clips = 4;
  const auto clips = generate_corpus(opt);
  BenchOptions bo;
  bo.methods.assign(all_methods().begin(), all_methods().end());
  bo.seeds = {0, 1};
  bo.threads = 2;
  const auto a = run_bench(clips, bo);
  const auto b = run_bench(clips, bo);
  EXPECT_EQ(format_report(a), format_report(b));
  EXPECT_EQ(a.clips, 4u);
  EXPECT_EQ(a.seeds, 2u);
  for (Method m : all_methods()) {
    const auto &r = a.result(m);
    EXPECT_EQ(r.runs.size(), 8u);
    EXPECT_EQ(r.overall.cells.size(), 8u);
    EXPECT_EQ(r.stats.conservation_violations, 0u);
  }
  const auto sub = a.subset(Method::Default, [](std::size_t i) { return i < 2; });
  EXPECT_EQ(sub.clips, 4u);
  const auto report = format_report(a);
  EXPECT_NE(report.find("offline-dbn"), std::string::npos);
  EXPECT_NE(report.find("Beat(70ms)"), std::string::npos);
}

}  // namespace
}  // namespace rtbeat
