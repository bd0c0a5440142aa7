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

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rtbeat/dbn_decoder.hpp"
#include "rtbeat/error.hpp"
#include "rtbeat/random.hpp"

namespace rtbeat {
namespace {

std::vector<std::vector<double>> log_emissions(
  const BeatStateSpace &space, std::span<const ActivationFrame> frames)
{
  std::vector<std::vector<double>> out(frames.size(), std::vector<double>(space.size()));
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (std::uint32_t s = 0; s < space.size(); ++s) {
      out[t][s] = std::log(beat_observation_likelihood(space, StateIndex(s), frames[t]));
    }
  }
  return out;
}

TEST(Viterbi, ConstantActivationsGiveCyclicPath)
{
  const auto space = BeatStateSpace::build(50, 120.0, 120.0);
  const std::vector<ActivationFrame> frames(200, ActivationFrame{0.3, 0.0});
  const auto path = viterbi_decode(frames, space, TransitionParams{});
  ASSERT_EQ(path.states.size(), 200u);
  for (std::size_t t = 1; t < path.states.size(); ++t) {
    EXPECT_EQ(space.phase(path.states[t]), (space.phase(path.states[t - 1]) + 1) % 25);
  }
  ASSERT_GE(path.beat_frames.size(), 2u);
  for (std::size_t k = 1; k < path.beat_frames.size(); ++k) {
    EXPECT_EQ(path.beat_frames[k] - path.beat_frames[k - 1], 25);
  }
}

TEST(Viterbi, ImpulseTrainPeriod20)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  const auto frames = oracle::impulse_train(500, 20, 7);
  const auto path = viterbi_decode(frames, space, TransitionParams{});
  ASSERT_FALSE(path.beats.empty());
  for (std::size_t k = 1; k < path.beats.size(); ++k) {
    EXPECT_NEAR(path.beats[k] - path.beats[k - 1], 0.4, 1e-9);
  }
  EXPECT_EQ(path.beat_frames.front(), 7);
  for (auto s : path.states) {
    EXPECT_EQ(space.period(s), 20);
  }
}

TEST(Viterbi, EmptyInputIsAnError)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  EXPECT_THROW(viterbi_decode(std::vector<ActivationFrame>{}, space, TransitionParams{}), InvalidArgument);
}

TEST(Viterbi, MatchesExhaustiveSearch)
{
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int tau_min = 4 + static_cast<int>(uniform_below(rng, 6));
    int tau_max = tau_min + static_cast<int>(uniform_below(rng, 12));
    auto states = [&](int hi) { return (hi * (hi + 1) - (tau_min - 1) * tau_min) / 2; };
    while (states(tau_max) > 200) {
      --tau_max;
    }
    const auto space = BeatStateSpace::build(60, 3600.0 / tau_max, 3600.0 / tau_min);
    ASSERT_EQ(space.tau_min(), tau_min);
    ASSERT_EQ(space.tau_max(), tau_max);
    ASSERT_LE(space.size(), 200u);
    const TransitionParams params{0.05 + 0.9 * uniform01(rng), 0.1 + 2.0 * uniform01(rng), 0.02};
    const auto steps = 1 + uniform_below(rng, 10);
    std::vector<ActivationFrame> frames(steps);
    for (auto &f : frames) {
      f.beat = uniform01(rng) < 0.2 ? 0.9 + 0.1 * uniform01(rng) : 0.2 * uniform01(rng);
    }
    const auto forward = transition_log_matrix(space, params);
    const auto emit = log_emissions(space, frames);
    const double best = oracle::exhaustive_max_path(forward, emit);
    const auto decoded = viterbi_decode(frames, space, params);
    EXPECT_EQ(decoded.log_probability, best) << "trial " << trial;
    EXPECT_EQ(oracle::path_log_probability(forward, emit, decoded.states), best) << "trial " << trial;
  }
}

TEST(Viterbi, Deterministic)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  Rng rng(3);
  std::vector<ActivationFrame> frames(300);
  for (auto &f : frames) {
    f.beat = uniform01(rng);
  }
  const auto a = viterbi_decode(frames, space, TransitionParams{});
  const auto b = viterbi_decode(frames, space, TransitionParams{});
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.log_probability, b.log_probability);
}

TEST(Viterbi, PathUsesOnlyAllowedTransitions)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  const auto m = transition_log_matrix(space, TransitionParams{});
  Rng rng(4);
  std::vector<ActivationFrame> frames(400);
  for (auto &f : frames) {
    f.beat = uniform01(rng);
  }
  const auto path = viterbi_decode(frames, space, TransitionParams{});
  for (std::size_t t = 1; t < path.states.size(); ++t) {
    const auto from = path.states[t - 1].idx;
    bool found = false;
    for (auto k = m.row_offsets[from]; k < m.row_offsets[from + 1]; ++k) {
      found = found || m.cols[k] == path.states[t].idx;
    }
    ASSERT_TRUE(found) << "frame " << t;
  }
  for (std::size_t k = 1; k < path.beats.size(); ++k) {
    EXPECT_GT(path.beats[k], path.beats[k - 1]);
  }
}

TEST(Viterbi, CascadedDownbeats)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  const std::vector<int> meters{2, 3, 4};
  const auto bar = BarStateSpace::build(meters);
  auto frames = oracle::impulse_train(800, 25, 5, 4);
  const auto path = viterbi_decode(frames, space, bar, TransitionParams{});
  ASSERT_GE(path.downbeat_frames.size(), 5u);
  for (auto f : path.downbeat_frames) {
    EXPECT_EQ((f - 5) % 100, 0) << f;
  }
  ASSERT_EQ(path.beat_meters.size(), path.beat_frames.size());
  EXPECT_EQ(path.beat_meters.back(), 4);
}

TEST(Extrapolation, ConstantContinuation)
{
  const std::vector<double> h{1.0, 1.5, 2.0};
  const auto next = extrapolate_beats(h, 1.2);
  ASSERT_EQ(next.size(), 2u);
  EXPECT_DOUBLE_EQ(next[0], 2.5);
  EXPECT_DOUBLE_EQ(next[1], 3.0);
}

TEST(Extrapolation, MedianIgnoresOutlier)
{
  std::vector<double> h{0.0};
  for (double d : {0.5, 0.5, 0.52, 0.5, 0.9}) {
    h.push_back(h.back() + d);
  }
  EXPECT_DOUBLE_EQ(inter_beat_interval(h), 0.5);
  const auto next = extrapolate_beats(h, 0.6);
  ASSERT_EQ(next.size(), 1u);
  EXPECT_DOUBLE_EQ(next[0], h.back() + 0.5);
}

TEST(Extrapolation, NeedsTwoBeats)
{
  const std::vector<double> h{1.0};
  EXPECT_THROW(extrapolate_beats(h, 2.0), InvalidArgument);
}

TEST(Extrapolation, OnlyLastWindowCounts)
{
  std::vector<double> h{0.0};
  for (int i = 0; i < 10; ++i) {
    h.push_back(h.back() + 1.0);
  }
  for (int i = 0; i < 8; ++i) {
    h.push_back(h.back() + 0.25);
  }
  EXPECT_DOUBLE_EQ(inter_beat_interval(h), 0.25);
}

TEST(Extrapolation, SpacingIsExactlyTheIbi)
{
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> h{uniform01(rng)};
    const auto n = 2 + uniform_below(rng, 15);
    for (std::uint64_t i = 0; i < n; ++i) {
      h.push_back(h.back() + 0.3 + uniform01(rng));
    }
    const double ibi = inter_beat_interval(h);
    const auto next = extrapolate_beats(h, 3.0 + 5.0 * uniform01(rng));
    ASSERT_FALSE(next.empty());
    EXPECT_NEAR(next.front() - h.back(), ibi, 1e-9);
    for (std::size_t k = 1; k < next.size(); ++k) {
      ASSERT_GT(next[k], next[k - 1]);
      ASSERT_NEAR(next[k] - next[k - 1], ibi, 1e-9);
    }
  }
}

TEST(Extrapolation, DownbeatsEveryFourth)
{
  std::vector<double> beats;
  for (int i = 0; i <= 8; ++i) {
    beats.push_back(0.5 * i);
  }
  const std::vector<double> downbeats{0.0, 2.0, 4.0};
  const auto next = extrapolate_beats(beats, 4.0);
  ASSERT_EQ(next.size(), 8u);
  const auto lengths = bar_lengths(beats, downbeats);
  EXPECT_EQ(lengths, (std::vector<int>{4, 4}));
  const auto db = extrapolate_downbeats(beats, downbeats, next, modal_meter(lengths));
  ASSERT_EQ(db.size(), 2u);
  EXPECT_DOUBLE_EQ(db[0], 0.5 * 12);
  EXPECT_DOUBLE_EQ(db[1], 0.5 * 16);
}

TEST(Extrapolation, ModalMeter)
{
  EXPECT_EQ(modal_meter(std::vector<int>{4, 4, 4, 3}), 4);
  EXPECT_EQ(modal_meter(std::vector<int>{4, 3, 4, 3}), 3);
  EXPECT_THROW(modal_meter(std::vector<int>{}), InvalidArgument);
}

TEST(Extrapolation, NoDownbeatHistoryIsAnError)
{
  const std::vector<double> beats{0.0, 0.5, 1.0};
  const std::vector<double> next{1.5, 2.0};
  EXPECT_THROW(extrapolate_downbeats(beats, std::vector<double>{}, next, 4), InvalidArgument);
}

}  // namespace
}  // namespace rtbeat
