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

#include "rtbeat/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rtbeat/error.hpp"

namespace rtbeat {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kHalfTolerance = 1e-12;

std::vector<Injection> resolve(
  std::span<const InjectionRequest> requests, InjectionTarget accepted,
  std::span<const StateIndex> targets)
{
  std::vector<Injection> out;
  out.reserve(requests.size());
  for (const auto &r : requests) {
    if (r.target == accepted && r.count > 0) {
      out.push_back(Injection{r.count, targets});
    }
  }
  return out;
}

}  // namespace

ParticleSet init_particles(std::size_t state_count, std::size_t n, Rng &rng)
{
  if (n == 0) {
    throw InvalidArgument("particle count must be at least 1");
  }
  if (state_count == 0) {
    throw InvalidArgument("cannot place particles in an empty state space");
  }
  ParticleSet ps;
  ps.states.resize(n);
  for (auto &s : ps.states) {
    s = StateIndex(static_cast<std::uint32_t>(uniform_below(rng, state_count)));
  }
  ps.weights.assign(n, 1.0 / static_cast<double>(n));
  return ps;
}

ParticleSet init_particles(const BeatStateSpace &space, std::size_t n, Rng &rng)
{
  return init_particles(space.size(), n, rng);
}

ParticleSet init_particles(const BarStateSpace &space, std::size_t n, Rng &rng)
{
  return init_particles(space.size(), n, rng);
}

std::vector<std::size_t> systematic_resample(
  std::span<const double> weights, std::size_t m, double offset)
{
  if (m == 0) {
    throw InvalidArgument("resample count must be at least 1");
  }
  if (weights.empty()) {
    throw InvalidArgument("cannot resample an empty weight vector");
  }
  if (!(offset >= 0.0 && offset < 1.0)) {
    throw InvalidArgument("resampling offset must lie in [0, 1)");
  }
  double sum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw InvalidArgument("weights must be non-negative");
    }
    sum += weights[i];
    if (weights[i] > 0.0) {
      last_positive = i;
    }
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidArgument("weights are not normalized (sum = " + std::to_string(sum) + ")");
  }

  // Work in units of one pointer spacing: pointer k sits at offset + k and
  // particle i owns [m * C_{i-1}, m * C_i).
  const double scale = static_cast<double>(m);
  std::vector<std::size_t> out(m);
  std::size_t i = 0;
  double acc = weights[0];
  for (std::size_t k = 0; k < m; ++k) {
    const double u = offset + static_cast<double>(k);
    while (i < last_positive && u >= acc * scale) {
      ++i;
      acc += weights[i];
    }
    out[k] = i;
  }
  return out;
}

std::vector<std::size_t> systematic_resample(std::span<const double> weights, std::size_t m, Rng &rng)
{
  return systematic_resample(weights, m, uniform01(rng));
}

namespace detail {

void normalize_or_reset(std::span<double> weights)
{
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(weights.size()));
    return;
  }
  const double inv = 1.0 / sum;
  for (auto &w : weights) {
    w *= inv;
  }
}

void remove_uniform(
  ParticleSet &ps, std::size_t count, std::span<const std::uint8_t> from_original,
  RemovalPool pool, Rng &rng)
{
  const std::size_t total = ps.size();
  std::vector<std::size_t> candidates;
  candidates.reserve(total);
  if (pool == RemovalPool::Survivors) {
    for (std::size_t i = 0; i < total; ++i) {
      if (from_original[i]) {
        candidates.push_back(i);
      }
    }
  }
  if (candidates.size() < count) {
    candidates.resize(total);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  }
  // Partial Fisher-Yates: the first `count` slots end up a uniform sample.
  std::vector<std::uint8_t> removed(total, 0);
  for (std::size_t k = 0; k < count; ++k) {
    const auto j = k + uniform_below(rng, candidates.size() - k);
    std::swap(candidates[k], candidates[j]);
    removed[candidates[k]] = 1;
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (!removed[i]) {
      ps.states[out++] = ps.states[i];
    }
  }
  ps.states.resize(out);
  ps.weights.assign(out, 1.0 / static_cast<double>(out));
}

}  // namespace detail

StepResult step(
  ParticleSet &ps, const BeatStateSpace &space, const BeatTransitionModel &model,
  const ActivationFrame &frame, std::span<const InjectionRequest> injections, Rng &rng,
  RemovalPool pool)
{
  const double beat_like = std::max(kLikelihoodFloor, frame.beat);
  const double other_like = std::max(kLikelihoodFloor, (1.0 - frame.beat) / space.non_beat_norm());
  const auto resolved = resolve(injections, InjectionTarget::BeatStates, space.beat_states());
  return step(
    ps, [&](StateIndex s, Rng &r) { return model.sample(s, r); },
    [&](StateIndex s) {
      return space.is_beat_state(s) ? beat_like : other_like;
    },
    std::span<const Injection>(resolved), rng, pool);
}

StepResult step(
  ParticleSet &ps, const BarStateSpace &space, const BarTransitionModel &model,
  const ActivationFrame &frame, std::span<const InjectionRequest> injections, Rng &rng,
  RemovalPool pool)
{
  const auto resolved =
    resolve(injections, InjectionTarget::DownbeatStates, space.downbeat_states());
  return step(
    ps, [&](StateIndex s, Rng &r) { return model.sample(s, r); },
    [&](StateIndex s) { return bar_observation_likelihood(space, s, frame); },
    std::span<const Injection>(resolved), rng, pool);
}

PhaseEstimate estimate_phase(const ParticleSet &ps, const BeatStateSpace &space)
{
  if (ps.size() == 0) {
    throw InvalidArgument("cannot estimate from an empty particle set");
  }
  std::vector<double> per_state(space.size(), 0.0);
  std::vector<double> per_row(static_cast<std::size_t>(space.tempo_count()), 0.0);
  double total = 0.0;
  double c = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const StateIndex st = ps.states[i];
    const double w = ps.weights[i];
    per_state[st.idx] += w;
    per_row[static_cast<std::size_t>(space.period(st) - space.tau_min())] += w;
    c += w * space.phase_cos(st);
    s += w * space.phase_sin(st);
    total += w;
  }
  const double half = 0.5 * total;
  const double tol = kHalfTolerance * total;

  PhaseEstimate est;
  double cum = 0.0;
  est.period = space.tau_max();
  for (int tau = space.tau_min(); tau <= space.tau_max(); ++tau) {
    cum += per_row[static_cast<std::size_t>(tau - space.tau_min())];
    if (cum >= half - tol) {
      est.period = tau;
      break;
    }
  }

  double mean = 0.0;
  if (std::hypot(c, s) > 1e-12 * total) {
    mean = std::atan2(s, c) / (2.0 * M_PI);
  }
  double cut = mean + 0.5;
  cut -= std::floor(cut);

  const auto order = space.by_phase_fraction();
  const std::size_t n = order.size();
  const auto start = static_cast<std::size_t>(
    std::lower_bound(order.begin(), order.end(), cut,
                     [&](StateIndex a, double v) { return space.phase_fraction(a) < v; }) -
    order.begin());
  auto unwrapped = [&](StateIndex a) {
    const double f = space.phase_fraction(a);
    return f >= cut ? f : f + 1.0;
  };

  cum = 0.0;
  double median = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const StateIndex a = order[(start + k) % n];
    const double w = per_state[a.idx];
    if (w <= 0.0) {
      continue;
    }
    cum += w;
    if (cum >= half - tol) {
      median = unwrapped(a);
      if (std::abs(cum - half) <= tol) {
        for (std::size_t j = k + 1; j < n; ++j) {
          const StateIndex b = order[(start + j) % n];
          if (per_state[b.idx] > 0.0) {
            median = 0.5 * (median + unwrapped(b));
            break;
          }
        }
      }
      break;
    }
  }
  median -= std::floor(median);
  est.phase_fraction = median >= 1.0 ? 0.0 : median;
  return est;
}

StateIndex estimate_bar_state(const ParticleSet &ps, const BarStateSpace &space)
{
  if (ps.size() == 0) {
    throw InvalidArgument("cannot estimate from an empty particle set");
  }
  std::vector<double> per_state(space.size(), 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    per_state[ps.states[i].idx] += ps.weights[i];
  }
  int best_meter = space.meters().front();
  double best_mass = -1.0;
  for (int m : space.meters()) {
    double mass = 0.0;
    for (int b = 0; b < m; ++b) {
      mass += per_state[space.index(b, m).idx];
    }
    if (mass > best_mass) {
      best_mass = mass;
      best_meter = m;
    }
  }
  StateIndex best = space.index(0, best_meter);
  for (int b = 1; b < best_meter; ++b) {
    const auto s = space.index(b, best_meter);
    if (per_state[s.idx] > per_state[best.idx]) {
      best = s;
    }
  }
  return best;
}

SalienceTrigger salience_trigger(const ActivationFrame &frame, double threshold)
{
  return SalienceTrigger{frame.beat >= threshold, frame.downbeat >= threshold};
}

}  // namespace rtbeat
