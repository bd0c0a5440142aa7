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

#include "rtbeat/dbn_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rtbeat/error.hpp"

namespace rtbeat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMatchSeconds = 1e-3;

std::size_t find_beat(std::span<const double> beats, double t)
{
  const auto it = std::min_element(beats.begin(), beats.end(),
    [t](double a, double b) { return std::abs(a - t) < std::abs(b - t); });
  if (it == beats.end() || std::abs(*it - t) > kMatchSeconds) {
    throw InvalidArgument("downbeat is not part of the beat history");
  }
  return static_cast<std::size_t>(it - beats.begin());
}

double median_of(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ViterbiResult viterbi(
  const SparseTransitions &predecessors, std::size_t steps,
  const std::function<void(std::size_t, std::span<double>)> &log_emissions)
{
  const std::size_t n = predecessors.size();
  if (steps == 0 || n == 0) {
    throw InvalidArgument("viterbi needs at least one step and one state");
  }
  std::vector<double> emit(n);
  std::vector<double> prev(n);
  std::vector<double> cur(n);
  std::vector<std::uint32_t> back((steps - 1) * n);

  const double log_init = std::log(1.0 / static_cast<double>(n));
  log_emissions(0, emit);
  for (std::size_t s = 0; s < n; ++s) {
    prev[s] = log_init + emit[s];
  }
  for (std::size_t t = 1; t < steps; ++t) {
    log_emissions(t, emit);
    std::uint32_t *bp = back.data() + (t - 1) * n;
    for (std::size_t s = 0; s < n; ++s) {
      double best = kNegInf;
      std::uint32_t arg = 0;
      for (auto k = predecessors.row_offsets[s]; k < predecessors.row_offsets[s + 1]; ++k) {
        const double cand = prev[predecessors.cols[k]] + predecessors.log_probs[k];
        if (cand > best) {
          best = cand;
          arg = predecessors.cols[k];
        }
      }
      cur[s] = best + emit[s];
      bp[s] = arg;
    }
    std::swap(prev, cur);
  }

  ViterbiResult result;
  std::size_t last = 0;
  for (std::size_t s = 1; s < n; ++s) {
    if (prev[s] > prev[last]) {
      last = s;
    }
  }
  result.log_probability = prev[last];
  result.path.resize(steps);
  result.path[steps - 1] = StateIndex(static_cast<std::uint32_t>(last));
  for (std::size_t t = steps - 1; t > 0; --t) {
    result.path[t - 1] = StateIndex(back[(t - 1) * n + result.path[t].idx]);
  }
  return result;
}

DecodedPath viterbi_decode(
  std::span<const ActivationFrame> activations, const BeatStateSpace &space,
  const TransitionParams &params)
{
  if (activations.empty()) {
    throw InvalidArgument("cannot decode an empty activation sequence");
  }
  const auto preds = transition_log_matrix(space, params).transposed();
  auto emissions = [&](std::size_t t, std::span<double> out) {
    const double b = activations[t].beat;
    const double log_beat = std::log(std::max(kLikelihoodFloor, b));
    const double log_other = std::log(std::max(kLikelihoodFloor, (1.0 - b) / space.non_beat_norm()));
    for (int tau = space.tau_min(); tau <= space.tau_max(); ++tau) {
      const int window = space.beat_window(tau);
      const std::size_t off = space.row_offset(tau);
      std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(off), window, log_beat);
      std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(off) + window, tau - window, log_other);
    }
  };
  auto vr = viterbi(preds, activations.size(), emissions);

  DecodedPath out;
  out.states = std::move(vr.path);
  out.log_probability = vr.log_probability;
  for (std::size_t t = 0; t < out.states.size(); ++t) {
    if (space.phase(out.states[t]) == 0) {
      out.beat_frames.push_back(static_cast<std::int64_t>(t));
      out.beats.push_back(static_cast<double>(t) / space.fps());
    }
  }
  return out;
}

DecodedPath viterbi_decode(
  std::span<const ActivationFrame> activations, const BeatStateSpace &beat_space,
  const BarStateSpace &bar_space, const TransitionParams &params)
{
  DecodedPath out = viterbi_decode(activations, beat_space, params);
  if (out.beat_frames.empty()) {
    return out;
  }
  const auto preds = BarTransitionModel(bar_space, params).log_matrix().transposed();
  auto emissions = [&](std::size_t k, std::span<double> dst) {
    const auto &frame = activations[static_cast<std::size_t>(out.beat_frames[k])];
    for (std::uint32_t s = 0; s < bar_space.size(); ++s) {
      dst[s] = std::log(bar_observation_likelihood(bar_space, StateIndex(s), frame));
    }
  };
  const auto bars = viterbi(preds, out.beat_frames.size(), emissions);
  for (std::size_t k = 0; k < bars.path.size(); ++k) {
    out.beat_meters.push_back(bar_space.meter(bars.path[k]));
    if (bar_space.is_downbeat_state(bars.path[k])) {
      out.downbeat_frames.push_back(out.beat_frames[k]);
      out.downbeats.push_back(out.beats[k]);
    }
  }
  return out;
}

double inter_beat_interval(std::span<const double> history, std::size_t window)
{
  if (history.size() < 2) {
    throw InvalidArgument("need at least two beats to define an inter-beat interval");
  }
  const std::size_t count = std::min(window == 0 ? 1 : window, history.size() - 1);
  std::vector<double> intervals;
  intervals.reserve(count);
  for (std::size_t i = history.size() - count; i < history.size(); ++i) {
    intervals.push_back(history[i] - history[i - 1]);
  }
  return median_of(std::move(intervals));
}

std::vector<double> extrapolate_beats(std::span<const double> history, double horizon, std::size_t window)
{
  const double ibi = inter_beat_interval(history, window);
  std::vector<double> out;
  if (!(ibi > 0.0)) {
    return out;
  }
  const double last = history.back();
  for (int k = 1; k * ibi <= horizon + 1e-9; ++k) {
    out.push_back(last + k * ibi);
  }
  return out;
}

int modal_meter(std::span<const int> meters)
{
  if (meters.empty()) {
    throw InvalidArgument("cannot take the mode of an empty meter history");
  }
  std::map<int, int> counts;
  for (int m : meters) {
    ++counts[m];
  }
  int best = counts.begin()->first;
  int best_count = 0;
  for (const auto &[m, c] : counts) {
    if (c > best_count) {
      best = m;
      best_count = c;
    }
  }
  return best;
}

std::vector<int> bar_lengths(std::span<const double> beats, std::span<const double> downbeats)
{
  std::vector<int> out;
  for (std::size_t i = 1; i < downbeats.size(); ++i) {
    const auto a = find_beat(beats, downbeats[i - 1]);
    const auto b = find_beat(beats, downbeats[i]);
    if (b > a) {
      out.push_back(static_cast<int>(b - a));
    }
  }
  return out;
}

std::vector<double> extrapolate_downbeats(
  std::span<const double> beat_history, std::span<const double> downbeat_history,
  std::span<const double> beat_extrapolations, int meter)
{
  if (downbeat_history.empty()) {
    throw InvalidArgument("need at least one historical downbeat");
  }
  if (meter < 1) {
    throw InvalidArgument("meter must be positive");
  }
  const auto last = find_beat(beat_history, downbeat_history.back());
  const auto after = beat_history.size() - 1 - last;
  std::vector<double> out;
  for (std::size_t j = 1; j <= beat_extrapolations.size(); ++j) {
    if ((after + j) % static_cast<std::size_t>(meter) == 0) {
      out.push_back(beat_extrapolations[j - 1]);
    }
  }
  return out;
}

}  // namespace rtbeat
