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

#include "rtbeat/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rtbeat/error.hpp"

namespace rtbeat {

namespace {

// Absorbs decimal round-off of frame-quantized timestamps (e.g. 0.07 s
// computed as 0.07000000000000006).
constexpr double kToleranceSlack = 1e-9;

void require_sorted(std::span<const double> v, const char *what)
{
  if (!std::is_sorted(v.begin(), v.end())) {
    throw InvalidArgument(std::string(what) + " timestamps must be sorted");
  }
}

}  // namespace

EvalResult f_measure(std::span<const double> est, std::span<const double> ref, double tolerance)
{
  require_sorted(est, "estimated");
  require_sorted(ref, "reference");

  const double tol = tolerance + kToleranceSlack;
  std::size_t tp = 0;
  std::size_t next = 0;  // estimates before `next` are matched or unusable
  for (double r : ref) {
    while (next < est.size() && est[next] < r - tol) {
      ++next;
    }
    if (next < est.size() && est[next] <= r + tol) {
      ++tp;
      ++next;
    }
  }

  EvalResult res;
  res.tp = tp;
  res.fp = est.size() - tp;
  res.fn = ref.size() - tp;
  res.precision = est.empty() ? 1.0 : static_cast<double>(tp) / static_cast<double>(est.size());
  res.recall = ref.empty() ? 1.0 : static_cast<double>(tp) / static_cast<double>(ref.size());
  const double denom = res.precision + res.recall;
  res.f1 = denom > 0.0 ? 2.0 * res.precision * res.recall / denom : 0.0;
  return res;
}

std::vector<double> apply_skip(std::span<const double> events, double skip)
{
  std::vector<double> out;
  std::copy_if(events.begin(), events.end(), std::back_inserter(out), [skip](double t) { return t >= skip; });
  return out;
}

EvalTable evaluate_clip(
  std::span<const BeatEvent> events, const Annotation &ann,
  std::span<const double> tolerances, std::span<const double> skips)
{
  std::vector<double> est_beats;
  std::vector<double> est_downbeats;
  for (const auto &e : events) {
    est_beats.push_back(e.time);
    if (e.is_downbeat) {
      est_downbeats.push_back(e.time);
    }
  }
  EvalTable table;
  for (double skip : skips) {
    const auto eb = apply_skip(est_beats, skip);
    const auto ed = apply_skip(est_downbeats, skip);
    const auto rb = apply_skip(ann.beats, skip);
    const auto rd = apply_skip(ann.downbeats, skip);
    for (double tol : tolerances) {
      table.cells.push_back({EventKind::Beat, tol, skip, f_measure(eb, rb, tol)});
      table.cells.push_back({EventKind::Downbeat, tol, skip, f_measure(ed, rd, tol)});
    }
  }
  return table;
}

double CorpusTable::f1_percent(EventKind kind, double tolerance, double skip) const
{
  for (const auto &c : cells) {
    if (c.kind == kind && std::abs(c.tolerance - tolerance) < 1e-12 && std::abs(c.skip - skip) < 1e-12) {
      return c.mean_f1_percent;
    }
  }
  throw InvalidArgument("no such cell in corpus table");
}

CorpusTable aggregate(std::span<const EvalTable> results)
{
  if (results.empty()) {
    throw InvalidArgument("cannot aggregate an empty corpus");
  }
  CorpusTable out;
  out.clips = results.size();
  const auto &layout = results.front().cells;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    double sum = 0.0;
    for (const auto &table : results) {
      if (table.cells.size() != layout.size() || table.cells[i].kind != layout[i].kind ||
          table.cells[i].tolerance != layout[i].tolerance || table.cells[i].skip != layout[i].skip) {
        throw InvalidArgument("evaluation tables do not share a layout");
      }
      sum += table.cells[i].result.f1;
    }
    out.cells.push_back({layout[i].kind, layout[i].tolerance, layout[i].skip,
                         100.0 * sum / static_cast<double>(results.size())});
  }
  return out;
}

std::string to_string(EventKind kind)
{
  return kind == EventKind::Beat ? "beat" : "downbeat";
}

std::string format_table(const EvalTable &table)
{
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-9s %9s %7s %8s %5s %5s %5s\n",
                "kind", "tolerance", "skip", "f1(%)", "tp", "fp", "fn");
  os << line;
  for (const auto &c : table.cells) {
    std::snprintf(line, sizeof(line), "%-9s %8.0fms %6.1fs %8.2f %5zu %5zu %5zu\n",
                  to_string(c.kind).c_str(), c.tolerance * 1000.0, c.skip, 100.0 * c.result.f1,
                  c.result.tp, c.result.fp, c.result.fn);
    os << line;
  }
  return os.str();
}

}  // namespace rtbeat
