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
#include <random>
#include <vector>

#include "rtbeat/error.hpp"
#include "rtbeat/state_space.hpp"

namespace rtbeat {
namespace {

TEST(BeatStateSpace, DefaultRangeHas1139States)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  EXPECT_EQ(space.tau_min(), 17);
  EXPECT_EQ(space.tau_max(), 50);
  EXPECT_EQ(space.size(), 1139u);
}

TEST(BeatStateSpace, SingleTempo)
{
  const auto space = BeatStateSpace::build(50, 60.0, 60.0);
  EXPECT_EQ(space.tau_min(), 50);
  EXPECT_EQ(space.tau_max(), 50);
  EXPECT_EQ(space.size(), 50u);
}

TEST(BeatStateSpace, WideRange)
{
  const auto space = BeatStateSpace::build(50, 55.0, 215.0);
  EXPECT_EQ(space.tau_min(), 14);
  EXPECT_EQ(space.tau_max(), 55);
}

TEST(BeatStateSpace, RejectsBadRanges)
{
  EXPECT_THROW(BeatStateSpace::build(50, 120.0, 60.0), InvalidArgument);
  EXPECT_THROW(BeatStateSpace::build(0, 60.0, 120.0), InvalidArgument);
  EXPECT_THROW(BeatStateSpace::build(50, 0.0, 120.0), InvalidArgument);
  EXPECT_THROW(BeatStateSpace::build(2, 60.0, 120.0), InvalidArgument);
  EXPECT_THROW(BeatStateSpace::build(50, 60.0, 120.0, 16, 0.5), InvalidArgument);
}

TEST(BeatStateSpace, BeatWindowExamples)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0);
  EXPECT_TRUE(space.is_beat_state(space.index(0, 20)));
  EXPECT_FALSE(space.is_beat_state(space.index(10, 20)));
  EXPECT_FALSE(space.is_beat_state(space.index(1, 20)));
  EXPECT_TRUE(space.is_beat_state(space.index(1, 40)));
  EXPECT_TRUE(space.is_beat_state(space.index(2, 40)));
  EXPECT_FALSE(space.is_beat_state(space.index(3, 40)));
}

// Brute-force enumeration for random triples: count, order, bijection,
// contiguous beat prefix.
TEST(BeatStateSpace, MatchesBruteForceEnumeration)
{
  std::mt19937 gen(1234);
  std::uniform_int_distribution<int> fps_dist(10, 120);
  std::uniform_real_distribution<double> bpm_dist(30.0, 300.0);
  int checked = 0;
  while (checked < 100) {
    const int fps = fps_dist(gen);
    double lo = bpm_dist(gen);
    double hi = bpm_dist(gen);
    if (lo > hi) {
      std::swap(lo, hi);
    }
    const long tmin = std::lround(fps * 60.0 / hi);
    const long tmax = std::lround(fps * 60.0 / lo);
    if (tmin < 2 || tmax > 400) {
      continue;
    }
    ++checked;
    const auto space = BeatStateSpace::build(fps, lo, hi);
    ASSERT_EQ(space.tau_min(), tmin);
    ASSERT_EQ(space.tau_max(), tmax);

    std::vector<std::pair<int, int>> expected;
    for (long tau = tmin; tau <= tmax; ++tau) {
      for (long phi = 0; phi < tau; ++phi) {
        expected.emplace_back(static_cast<int>(phi), static_cast<int>(tau));
      }
    }
    ASSERT_EQ(space.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const StateIndex s(static_cast<std::uint32_t>(i));
      ASSERT_EQ(space.phase(s), expected[i].first);
      ASSERT_EQ(space.period(s), expected[i].second);
      ASSERT_EQ(space.index(expected[i].first, expected[i].second), s);
      const int tau = expected[i].second;
      const long width = std::max(1L, std::lround(tau / 16.0));
      ASSERT_EQ(space.is_beat_state(s), expected[i].first < width);
    }
    for (long tau = tmin; tau <= tmax; ++tau) {
      ASSERT_GE(space.beat_window(static_cast<int>(tau)), 1);
      ASSERT_TRUE(space.is_beat_state(space.index(0, static_cast<int>(tau))));
    }
  }
}

TEST(BeatStateSpace, BeatStatesListMatchesPredicate)
{
  const auto space = BeatStateSpace::build(50, 60.0, 180.0, 8);
  std::size_t count = 0;
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    count += space.is_beat_state(StateIndex(i)) ? 1 : 0;
  }
  EXPECT_EQ(space.beat_states().size(), count);
  for (auto s : space.beat_states()) {
    EXPECT_TRUE(space.is_beat_state(s));
  }
}

TEST(BarStateSpace, Examples)
{
  const std::vector<int> four{4};
  const auto a = BarStateSpace::build(four);
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(a.downbeat_states().size(), 1u);

  const std::vector<int> all{2, 3, 4};
  const auto b = BarStateSpace::build(all);
  EXPECT_EQ(b.size(), 9u);
  EXPECT_EQ(b.downbeat_states().size(), 3u);

  EXPECT_THROW(BarStateSpace::build(std::vector<int>{}), InvalidArgument);
  EXPECT_THROW(BarStateSpace::build(std::vector<int>{1, 4}), InvalidArgument);
}

TEST(BarStateSpace, Bijection)
{
  const std::vector<int> meters{4, 2, 3, 3};
  const auto space = BarStateSpace::build(meters);
  ASSERT_EQ(space.size(), 9u);
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    const StateIndex s(i);
    EXPECT_EQ(space.index(space.position(s), space.meter(s)), s);
    EXPECT_LT(space.position(s), space.meter(s));
    EXPECT_EQ(space.is_downbeat_state(s), space.position(s) == 0);
  }
}

}  // namespace
}  // namespace rtbeat
