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

#include "rtbeat/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rtbeat/error.hpp"

namespace rtbeat {

BeatStateSpace BeatStateSpace::build(
  int fps, double min_bpm, double max_bpm, int window_divisor, double non_beat_norm)
{
  if (fps <= 0) {
    throw InvalidArgument("fps must be positive, got " + std::to_string(fps));
  }
  if (!(min_bpm > 0.0) || !(max_bpm >= min_bpm) || !std::isfinite(max_bpm)) {
    throw InvalidArgument("tempo range must satisfy 0 < min_bpm <= max_bpm");
  }
  if (window_divisor <= 0) {
    throw InvalidArgument("beat window divisor must be positive");
  }
  if (!(non_beat_norm >= 1.0) || !std::isfinite(non_beat_norm)) {
    throw InvalidArgument("non-beat normaliser must be at least 1");
  }
  const long tau_min = std::lround(fps * 60.0 / max_bpm);
  const long tau_max = std::lround(fps * 60.0 / min_bpm);
  if (tau_min < 2) {
    throw InvalidArgument("shortest beat period must be at least 2 frames, got " +
                          std::to_string(tau_min));
  }

  BeatStateSpace space;
  space.fps_ = fps;
  space.tau_min_ = static_cast<int>(tau_min);
  space.tau_max_ = static_cast<int>(tau_max);
  space.non_beat_norm_ = non_beat_norm;

  std::uint32_t offset = 0;
  for (int tau = space.tau_min_; tau <= space.tau_max_; ++tau) {
    const int window = std::max(1, static_cast<int>(std::lround(static_cast<double>(tau) / window_divisor)));
    space.row_offset_.push_back(offset);
    space.window_.push_back(std::min(window, tau - 1));
    for (int phi = 0; phi < tau; ++phi) {
      space.phase_.push_back(phi);
      space.period_.push_back(tau);
      space.fraction_.push_back(static_cast<double>(phi) / tau);
      space.cos_.push_back(std::cos(2.0 * M_PI * space.fraction_.back()));
      space.sin_.push_back(std::sin(2.0 * M_PI * space.fraction_.back()));
      if (phi < space.window_.back()) {
        space.beat_states_.emplace_back(offset + static_cast<std::uint32_t>(phi));
      }
    }
    offset += static_cast<std::uint32_t>(tau);
  }

  space.by_fraction_.resize(space.size());
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    space.by_fraction_[i] = StateIndex(i);
  }
  std::stable_sort(space.by_fraction_.begin(), space.by_fraction_.end(),
    [&](StateIndex a, StateIndex b) { return space.fraction_[a.idx] < space.fraction_[b.idx]; });
  return space;
}

StateIndex BeatStateSpace::index(int phase, int period) const
{
  if (period < tau_min_ || period > tau_max_ || phase < 0 || phase >= period) {
    throw InvalidArgument("(phase " + std::to_string(phase) + ", period " + std::to_string(period) +
                          ") is outside the beat state space");
  }
  return StateIndex(row_offset(period) + static_cast<std::uint32_t>(phase));
}

BarStateSpace BarStateSpace::build(std::span<const int> meters)
{
  if (meters.empty()) {
    throw InvalidArgument("meter set must not be empty");
  }
  std::vector<int> sorted(meters.begin(), meters.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() < 2) {
    throw InvalidArgument("every meter must have at least 2 beats per bar");
  }

  BarStateSpace space;
  space.meters_ = sorted;
  std::uint32_t offset = 0;
  for (int m : sorted) {
    space.meter_offset_.push_back(offset);
    space.downbeat_states_.emplace_back(offset);
    for (int b = 0; b < m; ++b) {
      space.position_.push_back(b);
      space.meter_.push_back(m);
    }
    offset += static_cast<std::uint32_t>(m);
  }
  return space;
}

StateIndex BarStateSpace::index(int position, int meter) const
{
  const auto it = std::find(meters_.begin(), meters_.end(), meter);
  if (it == meters_.end() || position < 0 || position >= meter) {
    throw InvalidArgument("(position " + std::to_string(position) + ", meter " +
                          std::to_string(meter) + ") is outside the bar state space");
  }
  return StateIndex(meter_offset_[static_cast<std::size_t>(it - meters_.begin())] +
                    static_cast<std::uint32_t>(position));
}

}  // namespace rtbeat
