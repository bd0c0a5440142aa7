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

#ifndef RTBEAT__MODELS_HPP_
#define RTBEAT__MODELS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "rtbeat/random.hpp"
#include "rtbeat/state_space.hpp"

namespace rtbeat {

// Per-frame network output. The non-beat activation is the implicit residual.
struct ActivationFrame {
  double beat = 0.0;
  double downbeat = 0.0;
};

bool is_valid(const ActivationFrame &frame) noexcept;
// Throws InvalidArgument when either activation lies outside [0, 1].
void validate(const ActivationFrame &frame);

inline constexpr double kLikelihoodFloor = 1e-8;

struct TransitionParams {
  // Probability of leaving the current period at a beat boundary.
  double tempo_change_prob = 0.05;
  // Target periods are weighted by exp(-decay * |delta period|).
  double tempo_change_decay = 0.6;
  // Probability of leaving the current meter at a bar boundary.
  double meter_change_prob = 0.02;

  void validate() const;
};

double beat_observation_likelihood(
  const BeatStateSpace &space, StateIndex s, const ActivationFrame &frame);

// Only meaningful at detected beat instants.
double bar_observation_likelihood(
  const BarStateSpace &space, StateIndex s, const ActivationFrame &frame);

// Row-compressed transition structure in the log domain. Zero-probability
// entries are not stored.
struct SparseTransitions {
  std::vector<std::uint32_t> row_offsets;  // size() + 1 entries
  std::vector<std::uint32_t> cols;
  std::vector<double> log_probs;

  std::size_t size() const noexcept { return row_offsets.empty() ? 0 : row_offsets.size() - 1; }
  std::size_t nonzeros() const noexcept { return cols.size(); }

  // Column-compressed copy: row r of the result lists the predecessors of r.
  SparseTransitions transposed() const;
};

// Beat-plane dynamics with the tempo-jump distribution precomputed per
// period. sample() and log_matrix() describe the same chain.
class BeatTransitionModel {
public:
  BeatTransitionModel(const BeatStateSpace &space, const TransitionParams &params);

  StateIndex sample(StateIndex s, Rng &rng) const;
  SparseTransitions log_matrix() const;

  // Probability of moving to period `to` from the boundary of period `from`.
  double boundary_prob(int from, int to) const;

private:
  const BeatStateSpace *space_;
  TransitionParams params_;
  // cdf_[from - tau_min] is the cumulative distribution over target periods
  // (tau_min..tau_max, excluding `from`) given that the tempo changes.
  std::vector<std::vector<double>> change_cdf_;
  std::vector<std::vector<double>> change_pmf_;
};

StateIndex sample_beat_transition(
  const BeatStateSpace &space, StateIndex s, const TransitionParams &params, Rng &rng);

SparseTransitions transition_log_matrix(const BeatStateSpace &space, const TransitionParams &params);

// Bar plane: position advances once per beat; at the end of the bar the meter
// is kept with probability 1 - meter_change_prob, otherwise a different meter
// is drawn uniformly.
class BarTransitionModel {
public:
  BarTransitionModel(const BarStateSpace &space, const TransitionParams &params);

  StateIndex sample(StateIndex s, Rng &rng) const;
  SparseTransitions log_matrix() const;

private:
  const BarStateSpace *space_;
  TransitionParams params_;
};

}  // namespace rtbeat

#endif  // RTBEAT__MODELS_HPP_
