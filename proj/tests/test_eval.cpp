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

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "rtbeat/error.hpp"
#include "rtbeat/eval.hpp"
#include "rtbeat/random.hpp"

namespace rtbeat {
namespace {

std::vector<double> random_times(Rng &rng, std::size_t max_n, double span)
{
  std::vector<double> v(uniform_below(rng, max_n + 1));
  for (auto &t : v) {
    t = span * uniform01(rng);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<BeatEvent> events_from(const Annotation &ann, bool flags_correct = true)
{
  std::vector<BeatEvent> out;
  for (double b : ann.beats) {
    const bool is_db = std::find(ann.downbeats.begin(), ann.downbeats.end(), b) != ann.downbeats.end();
    out.push_back({b, flags_correct ? is_db : !is_db, 120.0, 0});
  }
  return out;
}

TEST(FMeasure, PerfectMatch)
{
  const std::vector<double> ref{0.5, 1.0, 1.5};
  for (double tol : {0.01, 0.07, 0.2}) {
    const auto r = f_measure(ref, ref, tol);
    EXPECT_DOUBLE_EQ(r.f1, 1.0);
    EXPECT_EQ(r.tp, 3u);
  }
}

TEST(FMeasure, WorkedExample)
{
  const std::vector<double> ref{1.0, 2.0, 3.0};
  const std::vector<double> est{1.05, 2.2, 3.0};
  const auto r = f_measure(est, ref, 0.07);
  EXPECT_EQ(r.tp, 2u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_DOUBLE_EQ(r.f1, 2.0 / 3.0);
}

TEST(FMeasure, EmptyCases)
{
  const std::vector<double> ref{1.0};
  const std::vector<double> none;
  EXPECT_DOUBLE_EQ(f_measure(none, ref, 0.07).f1, 0.0);
  EXPECT_DOUBLE_EQ(f_measure(ref, none, 0.07).f1, 0.0);
  EXPECT_DOUBLE_EQ(f_measure(none, none, 0.07).f1, 1.0);
}

TEST(FMeasure, BoundaryIsInclusive)
{
  const std::vector<double> ref{1.0};
  const std::vector<double> est{1.07};
  EXPECT_EQ(f_measure(est, ref, 0.07).tp, 1u);
}

TEST(FMeasure, UnsortedIsAnError)
{
  const std::vector<double> bad{2.0, 1.0};
  const std::vector<double> ok{1.0, 2.0};
  EXPECT_THROW(f_measure(bad, ok, 0.07), InvalidArgument);
  EXPECT_THROW(f_measure(ok, bad, 0.07), InvalidArgument);
}

TEST(FMeasure, GreedyEqualsMaximumMatching)
{
  Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const auto est = random_times(rng, 9, 2.0);
    const auto ref = random_times(rng, 9, 2.0);
    const double tol = 0.02 + 0.2 * uniform01(rng);
    const auto r = f_measure(est, ref, tol);
    ASSERT_EQ(r.tp, oracle::max_matching(est, ref, tol)) << "trial " << trial;
    ASSERT_EQ(r.tp + r.fp, est.size());
    ASSERT_EQ(r.tp + r.fn, ref.size());
    ASSERT_LE(r.tp, std::min(est.size(), ref.size()));
  }
}

TEST(FMeasure, SymmetricTruePositives)
{
  Rng rng(501);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_times(rng, 12, 3.0);
    const auto b = random_times(rng, 12, 3.0);
    const double tol = 0.02 + 0.2 * uniform01(rng);
    ASSERT_EQ(f_measure(a, b, tol).tp, f_measure(b, a, tol).tp);
  }
}

TEST(FMeasure, MonotoneInTolerance)
{
  Rng rng(502);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_times(rng, 12, 3.0);
    const auto b = random_times(rng, 12, 3.0);
    ASSERT_GE(f_measure(a, b, 0.2).f1, f_measure(a, b, 0.07).f1);
  }
}

TEST(Skip, Examples)
{
  const std::vector<double> v{1, 2, 6, 7};
  EXPECT_EQ(apply_skip(v, 5.0), (std::vector<double>{6, 7}));
  EXPECT_EQ(apply_skip(v, 0.0), v);
  EXPECT_TRUE(apply_skip(v, 10.0).empty());
}

TEST(EvaluateClip, PerfectOutput)
{
  Annotation ann;
  for (int i = 0; i < 20; ++i) {
    ann.beats.push_back(0.5 * i);
    if (i % 4 == 0) {
      ann.downbeats.push_back(0.5 * i);
    }
  }
  const auto table = evaluate_clip(events_from(ann), ann);
  ASSERT_EQ(table.cells.size(), 8u);
  for (const auto &c : table.cells) {
    EXPECT_DOUBLE_EQ(c.result.f1, 1.0);
  }
}

TEST(EvaluateClip, WrongDownbeatFlags)
{
  Annotation ann;
  for (int i = 0; i < 24; ++i) {
    ann.beats.push_back(0.5 * i);
    if (i % 3 == 0) {
      ann.downbeats.push_back(0.5 * i);
    }
  }
  const auto table = evaluate_clip(events_from(ann, false), ann);
  for (const auto &c : table.cells) {
    EXPECT_DOUBLE_EQ(c.result.f1, c.kind == EventKind::Beat ? 1.0 : 0.0);
  }
}

TEST(EvaluateClip, CellOrder)
{
  const auto table = evaluate_clip({}, Annotation{});
  ASSERT_EQ(table.cells.size(), 8u);
  const double skips[] = {0, 0, 0, 0, 5, 5, 5, 5};
  const double tols[] = {0.07, 0.07, 0.2, 0.2, 0.07, 0.07, 0.2, 0.2};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(table.cells[i].skip, skips[i]);
    EXPECT_EQ(table.cells[i].tolerance, tols[i]);
    EXPECT_EQ(table.cells[i].kind, i % 2 == 0 ? EventKind::Beat : EventKind::Downbeat);
  }
}

TEST(EvaluateClip, EarlyErrorsOnlyHelpSkip)
{
  Annotation ann;
  for (int i = 0; i < 30; ++i) {
    ann.beats.push_back(0.5 * i);
  }
  auto events = events_from(ann);
  for (auto &ev : events) {
    if (ev.time < 5.0) {
      ev.time += 0.15;
    }
  }
  const auto table = evaluate_clip(events, ann);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_GE(table.cells[i + 4].result.f1, table.cells[i].result.f1);
  }
}

TEST(Aggregate, Means)
{
  EvalTable a;
  a.cells.push_back({EventKind::Beat, 0.07, 0.0, {0.4}});
  a.cells.push_back({EventKind::Downbeat, 0.07, 0.0, {0.9}});
  EvalTable b = a;
  b.cells[0].result.f1 = 0.6;
  b.cells[1].result.f1 = 0.1;

  const std::vector<EvalTable> one{a};
  const auto t1 = aggregate(one);
  EXPECT_DOUBLE_EQ(t1.f1_percent(EventKind::Beat, 0.07, 0.0), 40.0);
  EXPECT_DOUBLE_EQ(t1.f1_percent(EventKind::Downbeat, 0.07, 0.0), 90.0);

  const std::vector<EvalTable> two{a, b};
  const auto t2 = aggregate(two);
  EXPECT_DOUBLE_EQ(t2.f1_percent(EventKind::Beat, 0.07, 0.0), 50.0);
  EXPECT_DOUBLE_EQ(t2.f1_percent(EventKind::Downbeat, 0.07, 0.0), 50.0);
  EXPECT_EQ(t2.clips, 2u);
  EXPECT_THROW(t2.f1_percent(EventKind::Beat, 0.2, 0.0), InvalidArgument);
}

TEST(Aggregate, EmptyIsAnError)
{
  EXPECT_THROW(aggregate(std::vector<EvalTable>{}), InvalidArgument);
}

TEST(FormatTable, PercentWithTwoDecimals)
{
  const std::vector<double> ref{1.0, 2.0, 3.0};
  Annotation ann{ref, {1.0}};
  std::vector<BeatEvent> ev{{1.05, true, 60.0, 0}, {2.2, false, 60.0, 0}, {3.0, false, 60.0, 0}};
  const auto text = format_table(evaluate_clip(ev, ann));
  EXPECT_NE(text.find("66.67"), std::string::npos);
}

}  // namespace
}  // namespace rtbeat
