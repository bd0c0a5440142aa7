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

#ifndef RTBEAT__PARTICLE_FILTER_HPP_
#define RTBEAT__PARTICLE_FILTER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rtbeat/models.hpp"
#include "rtbeat/random.hpp"
#include "rtbeat/state_space.hpp"

namespace rtbeat {

struct ParticleSet {
  std::vector<StateIndex> states;
  std::vector<double> weights;

  std::size_t size() const noexcept { return states.size(); }
};

enum class InjectionTarget { BeatStates, DownbeatStates };
enum class InjectionCause { Salience, Extrapolation, Both };

struct InjectionRequest {
  std::size_t count = 0;
  InjectionTarget target = InjectionTarget::BeatStates;
  InjectionCause cause = InjectionCause::Salience;
};

// A resolved injection: `count` particles drawn uniformly from `targets`.
struct Injection {
  std::size_t count = 0;
  std::span<const StateIndex> targets;
};

// Which post-resampling particles are eligible for removal.
enum class RemovalPool {
  All,        // every particle of the resampled population
  Survivors,  // only offspring of particles that existed before injection
};

struct StepResult {
  std::size_t injected = 0;
  // Population before the removal pass (N + injected).
  std::size_t peak_population = 0;
};

// Throws InvalidArgument when n or state_count is zero.
ParticleSet init_particles(std::size_t state_count, std::size_t n, Rng &rng);
ParticleSet init_particles(const BeatStateSpace &space, std::size_t n, Rng &rng);
ParticleSet init_particles(const BarStateSpace &space, std::size_t n, Rng &rng);

// Systematic (low-variance) resampling: m evenly spaced pointers with a
// common offset. Index i is drawn floor(m*w_i) or ceil(m*w_i) times.
// Throws InvalidArgument when the weights do not sum to 1 within 1e-9 or
// m == 0.
std::vector<std::size_t> systematic_resample(std::span<const double> weights, std::size_t m, Rng &rng);
// Same with an explicit offset in [0, 1) (in units of one pointer spacing).
std::vector<std::size_t> systematic_resample(
  std::span<const double> weights, std::size_t m, double offset);

// Transition, reweight, inject, resample to N + K, remove K. `transition`
// maps (StateIndex, Rng&) -> StateIndex; `likelihood` maps StateIndex ->
// double. The population is N again on return.
template <class Transition, class Likelihood>
StepResult step(
  ParticleSet &ps, Transition &&transition, Likelihood &&likelihood,
  std::span<const Injection> injections, Rng &rng, RemovalPool pool = RemovalPool::All);

// Beat-plane convenience wrapper that resolves InjectionRequest targets to
// the space's beat states.
StepResult step(
  ParticleSet &ps, const BeatStateSpace &space, const BeatTransitionModel &model,
  const ActivationFrame &frame, std::span<const InjectionRequest> injections, Rng &rng,
  RemovalPool pool = RemovalPool::All);

StepResult step(
  ParticleSet &ps, const BarStateSpace &space, const BarTransitionModel &model,
  const ActivationFrame &frame, std::span<const InjectionRequest> injections, Rng &rng,
  RemovalPool pool = RemovalPool::All);

struct PhaseEstimate {
  double phase_fraction = 0.0;  // in [0, 1)
  int period = 0;               // frames per beat
};

// Weighted median of the period (ties resolve to the lower period) and
// weighted circular median of phase/period. The circular median is taken by
// cutting the circle opposite the weighted mean direction; when the cumulative
// weight lands exactly on one half the midpoint of the two neighbours is used.
PhaseEstimate estimate_phase(const ParticleSet &ps, const BeatStateSpace &space);

// Bar-plane point estimate: the meter with the largest total weight, then the
// heaviest position within it. Ties go to the lower index.
StateIndex estimate_bar_state(const ParticleSet &ps, const BarStateSpace &space);

struct SalienceTrigger {
  bool beat = false;
  bool downbeat = false;
};

SalienceTrigger salience_trigger(const ActivationFrame &frame, double threshold);

namespace detail {

void normalize_or_reset(std::span<double> weights);
void remove_uniform(
  ParticleSet &ps, std::size_t count, std::span<const std::uint8_t> from_original,
  RemovalPool pool, Rng &rng);

}  // namespace detail

template <class Transition, class Likelihood>
StepResult step(
  ParticleSet &ps, Transition &&transition, Likelihood &&likelihood,
  std::span<const Injection> injections, Rng &rng, RemovalPool pool)
{
  const std::size_t n = ps.size();
  for (std::size_t i = 0; i < n; ++i) {
    ps.states[i] = transition(ps.states[i], rng);
    ps.weights[i] *= likelihood(ps.states[i]);
  }
  detail::normalize_or_reset(ps.weights);

  std::size_t injected = 0;
  for (const auto &inj : injections) {
    if (inj.targets.empty()) {
      continue;
    }
    for (std::size_t k = 0; k < inj.count; ++k) {
      ps.states.push_back(inj.targets[uniform_below(rng, inj.targets.size())]);
      ps.weights.push_back(1.0 / static_cast<double>(n));
    }
    injected += inj.count;
  }
  if (injected > 0) {
    detail::normalize_or_reset(ps.weights);
  }

  const std::size_t total = n + injected;
  const auto picks = systematic_resample(ps.weights, total, rng);
  std::vector<StateIndex> resampled(total);
  std::vector<std::uint8_t> from_original(total);
  for (std::size_t i = 0; i < total; ++i) {
    resampled[i] = ps.states[picks[i]];
    from_original[i] = picks[i] < n ? 1 : 0;
  }
  ps.states = std::move(resampled);
  ps.weights.assign(total, 1.0 / static_cast<double>(total));

  if (injected > 0) {
    detail::remove_uniform(ps, injected, from_original, pool, rng);
  }
  return StepResult{injected, total};
}

}  // namespace rtbeat

#endif  // RTBEAT__PARTICLE_FILTER_HPP_
