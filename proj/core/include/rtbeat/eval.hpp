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

#ifndef RTBEAT__EVAL_HPP_
#define RTBEAT__EVAL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rtbeat/tracker.hpp"

namespace rtbeat {

struct Annotation {
  std::vector<double> beats;      // seconds, sorted
  std::vector<double> downbeats;  // seconds, sorted subset of beats
};

struct EvalResult {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// One-to-one matching: references are scanned in order and each takes the
// earliest unmatched estimate within +-tolerance. An empty estimate list has
// precision 1, an empty reference list has recall 1 (so two empty lists
// score f1 = 1). Throws InvalidArgument on unsorted input.
EvalResult f_measure(std::span<const double> est, std::span<const double> ref, double tolerance);

// Drops every timestamp below `skip` seconds.
std::vector<double> apply_skip(std::span<const double> events, double skip);

enum class EventKind { Beat, Downbeat };

struct EvalCell {
  EventKind kind = EventKind::Beat;
  double tolerance = 0.0;
  double skip = 0.0;
  EvalResult result;
};

// Cells ordered skip-major, then tolerance, then beat before downbeat.
struct EvalTable {
  std::vector<EvalCell> cells;
};

inline constexpr double kDefaultTolerances[] = {0.07, 0.2};
inline constexpr double kDefaultSkips[] = {0.0, 5.0};

// Downbeat cells compare only downbeat-flagged events with annotated
// downbeats.
EvalTable evaluate_clip(
  std::span<const BeatEvent> events, const Annotation &ann,
  std::span<const double> tolerances = kDefaultTolerances,
  std::span<const double> skips = kDefaultSkips);

struct CorpusCell {
  EventKind kind = EventKind::Beat;
  double tolerance = 0.0;
  double skip = 0.0;
  double mean_f1_percent = 0.0;
};

struct CorpusTable {
  std::size_t clips = 0;
  std::vector<CorpusCell> cells;

  // Throws InvalidArgument when no such cell exists.
  double f1_percent(EventKind kind, double tolerance, double skip) const;
};

// Unweighted per-cell mean over clips, in percent. All tables must share a
// layout. Throws InvalidArgument on an empty corpus or mismatched layouts.
CorpusTable aggregate(std::span<const EvalTable> results);

std::string to_string(EventKind kind);
// Human-readable single-clip table ("f1 as percentage with 2 decimals").
std::string format_table(const EvalTable &table);

}  // namespace rtbeat

#endif  // RTBEAT__EVAL_HPP_
