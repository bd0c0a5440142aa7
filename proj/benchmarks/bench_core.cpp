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


#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "rtbeat/dbn_decoder.hpp"
#include "rtbeat/particle_filter.hpp"
#include "rtbeat/synth.hpp"
#include "rtbeat/tracker.hpp"

namespace {

using namespace rtbeat;

std::vector<ActivationFrame> clip(double seconds)
{
  auto spec = constant_tempo_spec(120.0, 0.3, seconds, 4);
  spec.noise = 0.1;
  return synthesize_activations(spec).frames;
}

void BM_StepFrame(benchmark::State &state)
{
  TrackerConfig cfg;
  cfg.method = static_cast<Method>(state.range(0));
  const auto frames = clip(30.0);
  Tracker tracker(cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.step_frame(frames[i]));
    if (++i == frames.size()) {
      state.PauseTiming();
      tracker = Tracker(cfg);
      i = 0;
      state.ResumeTiming();
    }
  }
  state.SetLabel(std::string(to_string(cfg.method)));
}
BENCHMARK(BM_StepFrame)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_ViterbiDecode(benchmark::State &state)
{
  const auto frames = clip(static_cast<double>(state.range(0)));
  const TrackerConfig cfg;
  const auto beat = BeatStateSpace::build(cfg.fps, cfg.min_bpm, cfg.max_bpm, cfg.decoder_window_divisor);
  const auto bar = BarStateSpace::build(cfg.meters);
  for (auto _ : state) {
    benchmark::DoNotOptimize(viterbi_decode(frames, beat, bar, cfg.transitions));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames.size()));
}
BENCHMARK(BM_ViterbiDecode)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SystematicResample(benchmark::State &state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto &x : w) {
    x = uniform01(rng);
    total += x;
  }
  for (auto &x : w) {
    x /= total;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(systematic_resample(w, n + n / 10, rng));
  }
}
BENCHMARK(BM_SystematicResample)->Arg(1500)->Arg(15000);

}  // namespace

BENCHMARK_MAIN();
