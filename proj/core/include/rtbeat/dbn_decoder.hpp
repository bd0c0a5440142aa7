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

#ifndef RTBEAT__DBN_DECODER_HPP_
#define RTBEAT__DBN_DECODER_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rtbeat/models.hpp"
#include "rtbeat/state_space.hpp"

namespace rtbeat {

struct ViterbiResult {
  std::vector<StateIndex> path;
  double log_probability = 0.0;
};

// Max-product decoding with a uniform initial distribution. `predecessors`
// is the transposed transition structure (see SparseTransitions::transposed);
// `log_emission(t, s)` scores state s at step t. Ties resolve to the lower
// state index, both for the best predecessor and for the final state.
ViterbiResult viterbi(
  const SparseTransitions &predecessors, std::size_t steps,
  const std::function<void(std::size_t, std::span<double>)> &log_emissions);

struct DecodedPath {
  std::vector<StateIndex> states;       // beat-plane state per frame
  std::vector<std::int64_t> beat_frames;
  std::vector<double> beats;            // seconds
  std::vector<std::int64_t> downbeat_frames;
  std::vector<double> downbeats;        // seconds
  std::vector<int> beat_meters;         // decoded meter at each beat (empty without a bar space)
  double log_probability = 0.0;
};

// Beat-plane Viterbi decoding. A beat is reported wherever the path sits at
// phase 0. Throws InvalidArgument on empty input.
DecodedPath viterbi_decode(
  std::span<const ActivationFrame> activations, const BeatStateSpace &space,
  const TransitionParams &params);

// Cascaded decoding: beats as above, then a bar-plane Viterbi pass over the
// activations sampled at the decoded beats marks downbeats.
DecodedPath viterbi_decode(
  std::span<const ActivationFrame> activations, const BeatStateSpace &beat_space,
  const BarStateSpace &bar_space, const TransitionParams &params);

inline constexpr std::size_t kDefaultIbiWindow = 8;

// Median of the last `window` inter-beat intervals. Requires >= 2 beats.
double inter_beat_interval(std::span<const double> history, std::size_t window = kDefaultIbiWindow);

// Continues the beat grid: t_last + k * IBI for k = 1, 2, ... while
// k * IBI <= horizon (seconds after the last beat). Throws InvalidArgument
// with fewer than two beats.
std::vector<double> extrapolate_beats(
  std::span<const double> history, double horizon, std::size_t window = kDefaultIbiWindow);

// Most frequent value; ties go to the smaller meter. Throws on empty input.
int modal_meter(std::span<const int> meters);

// Beats-per-bar of every complete bar in a decoded history.
std::vector<int> bar_lengths(std::span<const double> beats, std::span<const double> downbeats);

// Marks every meter-th extrapolated beat as a downbeat, phase-aligned to the
// last downbeat of `downbeat_history` within `beat_history`. Throws
// InvalidArgument when the downbeat history is empty or meter < 1.
std::vector<double> extrapolate_downbeats(
  std::span<const double> beat_history, std::span<const double> downbeat_history,
  std::span<const double> beat_extrapolations, int meter);

}  // namespace rtbeat

#endif  // RTBEAT__DBN_DECODER_HPP_
