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

#ifndef RTBEAT__STATE_SPACE_HPP_
#define RTBEAT__STATE_SPACE_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace rtbeat {

// Index into the flat enumeration of a state space.
struct StateIndex {
  std::uint32_t idx = 0;

  constexpr StateIndex() = default;
  constexpr explicit StateIndex(std::uint32_t i) : idx(i) {}
  constexpr auto operator<=>(const StateIndex &) const = default;
};

inline constexpr int kDefaultBeatWindowDivisor = 16;
inline constexpr double kDefaultNonBeatNorm = 1.0;

// Discretized (phase, period) plane of the bar-pointer model. Periods are
// measured in frames per beat; the phase of a state counts frames since the
// last beat. States are stored period-major, phase-minor.
class BeatStateSpace {
public:
  // Throws InvalidArgument unless 0 < min_bpm <= max_bpm, fps > 0, the
  // shortest period is at least two frames and non_beat_norm >= 1.
  static BeatStateSpace build(int fps, double min_bpm, double max_bpm,
    int window_divisor = kDefaultBeatWindowDivisor, double non_beat_norm = kDefaultNonBeatNorm);

  int fps() const noexcept { return fps_; }
  int tau_min() const noexcept { return tau_min_; }
  int tau_max() const noexcept { return tau_max_; }
  int tempo_count() const noexcept { return tau_max_ - tau_min_ + 1; }
  std::size_t size() const noexcept { return phase_.size(); }

  int phase(StateIndex s) const { return phase_[s.idx]; }
  int period(StateIndex s) const { return period_[s.idx]; }
  StateIndex index(int phase, int period) const;
  // Flat index of (0, period).
  std::uint32_t row_offset(int period) const { return row_offset_[period - tau_min_]; }

  // Number of leading phases counted as beat states for `period`.
  int beat_window(int period) const { return window_[period - tau_min_]; }
  bool is_beat_state(StateIndex s) const { return phase_[s.idx] < beat_window(period_[s.idx]); }
  // Non-beat phases in the row of `s`.
  int non_beat_count(StateIndex s) const { return period_[s.idx] - beat_window(period_[s.idx]); }
  // Divides the non-beat observation mass. Identical for every period.
  double non_beat_norm() const noexcept { return non_beat_norm_; }
  double phase_fraction(StateIndex s) const { return fraction_[s.idx]; }
  // Unit vector of the phase fraction on the circle.
  double phase_cos(StateIndex s) const { return cos_[s.idx]; }
  double phase_sin(StateIndex s) const { return sin_[s.idx]; }

  std::span<const StateIndex> beat_states() const { return beat_states_; }
  // All states ordered by ascending phase fraction (ties by index).
  std::span<const StateIndex> by_phase_fraction() const { return by_fraction_; }

private:
  BeatStateSpace() = default;

  int fps_ = 0;
  int tau_min_ = 0;
  int tau_max_ = 0;
  double non_beat_norm_ = 1.0;
  std::vector<int> phase_;
  std::vector<int> period_;
  std::vector<double> fraction_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<std::uint32_t> row_offset_;
  std::vector<int> window_;
  std::vector<StateIndex> beat_states_;
  std::vector<StateIndex> by_fraction_;
};

// (bar position, meter) plane stepped once per beat. Meters ascending,
// positions ascending within a meter; position 0 is the downbeat.
class BarStateSpace {
public:
  // Duplicates are dropped. Throws InvalidArgument on an empty set or a
  // meter below 2.
  static BarStateSpace build(std::span<const int> meters);

  std::size_t size() const noexcept { return position_.size(); }
  std::span<const int> meters() const { return meters_; }

  int position(StateIndex s) const { return position_[s.idx]; }
  int meter(StateIndex s) const { return meter_[s.idx]; }
  bool is_downbeat_state(StateIndex s) const { return position_[s.idx] == 0; }
  StateIndex index(int position, int meter) const;

  std::span<const StateIndex> downbeat_states() const { return downbeat_states_; }

private:
  BarStateSpace() = default;

  std::vector<int> meters_;
  std::vector<std::uint32_t> meter_offset_;
  std::vector<int> position_;
  std::vector<int> meter_;
  std::vector<StateIndex> downbeat_states_;
};

}  // namespace rtbeat

#endif  // RTBEAT__STATE_SPACE_HPP_
