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

#include "rtbeat/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rtbeat/error.hpp"

namespace rtbeat {

bool is_valid(const ActivationFrame &frame) noexcept
{
  return frame.beat >= 0.0 && frame.beat <= 1.0 && frame.downbeat >= 0.0 && frame.downbeat <= 1.0;
}

void validate(const ActivationFrame &frame)
{
  if (!is_valid(frame)) {
    throw InvalidArgument("activation out of [0, 1]: beat=" + std::to_string(frame.beat) +
                          " downbeat=" + std::to_string(frame.downbeat));
  }
}

void TransitionParams::validate() const
{
  auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!is_prob(tempo_change_prob) || !is_prob(meter_change_prob)) {
    throw InvalidArgument("transition probabilities must lie in [0, 1]");
  }
  if (!(tempo_change_decay > 0.0)) {
    throw InvalidArgument("tempo_change_decay must be positive");
  }
}

double beat_observation_likelihood(
  const BeatStateSpace &space, StateIndex s, const ActivationFrame &frame)
{
  if (space.is_beat_state(s)) {
    return std::max(kLikelihoodFloor, frame.beat);
  }
  return std::max(kLikelihoodFloor, (1.0 - frame.beat) / space.non_beat_norm());
}

double bar_observation_likelihood(
  const BarStateSpace &space, StateIndex s, const ActivationFrame &frame)
{
  return std::max(kLikelihoodFloor, space.is_downbeat_state(s) ? frame.downbeat : frame.beat);
}

SparseTransitions SparseTransitions::transposed() const
{
  const std::size_t n = size();
  SparseTransitions t;
  t.row_offsets.assign(n + 1, 0);
  for (auto c : cols) {
    ++t.row_offsets[c + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    t.row_offsets[i + 1] += t.row_offsets[i];
  }
  t.cols.resize(cols.size());
  t.log_probs.resize(cols.size());
  std::vector<std::uint32_t> fill(t.row_offsets.begin(), t.row_offsets.end() - 1);
  // Rows are visited in ascending order, so predecessor lists come out sorted.
  for (std::uint32_t r = 0; r < n; ++r) {
    for (auto k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      const auto pos = fill[cols[k]]++;
      t.cols[pos] = r;
      t.log_probs[pos] = log_probs[k];
    }
  }
  return t;
}

BeatTransitionModel::BeatTransitionModel(const BeatStateSpace &space, const TransitionParams &params)
: space_(&space), params_(params)
{
  params_.validate();
  const int lo = space.tau_min();
  const int hi = space.tau_max();
  change_cdf_.resize(static_cast<std::size_t>(space.tempo_count()));
  change_pmf_.resize(static_cast<std::size_t>(space.tempo_count()));
  for (int from = lo; from <= hi; ++from) {
    auto &pmf = change_pmf_[static_cast<std::size_t>(from - lo)];
    auto &cdf = change_cdf_[static_cast<std::size_t>(from - lo)];
    pmf.assign(static_cast<std::size_t>(space.tempo_count()), 0.0);
    if (lo == hi) {
      continue;
    }
    // Shift by the nearest neighbour distance (always 1) so a huge decay
    // still leaves the nearest periods representable.
    double total = 0.0;
    for (int to = lo; to <= hi; ++to) {
      if (to == from) {
        continue;
      }
      const double w = std::exp(-params_.tempo_change_decay * (std::abs(to - from) - 1));
      pmf[static_cast<std::size_t>(to - lo)] = w;
      total += w;
    }
    double acc = 0.0;
    cdf.resize(pmf.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      pmf[i] /= total;
      acc += pmf[i];
      cdf[i] = acc;
    }
  }
}

double BeatTransitionModel::boundary_prob(int from, int to) const
{
  const int lo = space_->tau_min();
  if (space_->tempo_count() == 1) {
    return from == to ? 1.0 : 0.0;
  }
  if (from == to) {
    return 1.0 - params_.tempo_change_prob;
  }
  return params_.tempo_change_prob *
         change_pmf_[static_cast<std::size_t>(from - lo)][static_cast<std::size_t>(to - lo)];
}

StateIndex BeatTransitionModel::sample(StateIndex s, Rng &rng) const
{
  const int tau = space_->period(s);
  if (space_->phase(s) + 1 < tau) {
    return StateIndex(s.idx + 1);
  }
  int next_tau = tau;
  if (space_->tempo_count() > 1 && uniform01(rng) < params_.tempo_change_prob) {
    const auto &cdf = change_cdf_[static_cast<std::size_t>(tau - space_->tau_min())];
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
      --it;
    }
    auto pos = it - cdf.begin();
    // Skip the (zero-mass) slot of the current period and any trailing
    // zero-mass slots produced by rounding at the top of the CDF.
    while (pos > 0 && change_pmf_[static_cast<std::size_t>(tau - space_->tau_min())]
                                 [static_cast<std::size_t>(pos)] == 0.0) {
      --pos;
    }
    next_tau = space_->tau_min() + static_cast<int>(pos);
    if (next_tau == tau) {
      next_tau = tau + 1 <= space_->tau_max() ? tau + 1 : tau - 1;
    }
  }
  return StateIndex(space_->row_offset(next_tau));
}

SparseTransitions BeatTransitionModel::log_matrix() const
{
  SparseTransitions m;
  m.row_offsets.reserve(space_->size() + 1);
  m.row_offsets.push_back(0);
  for (std::uint32_t i = 0; i < space_->size(); ++i) {
    const StateIndex s(i);
    const int tau = space_->period(s);
    if (space_->phase(s) + 1 < tau) {
      m.cols.push_back(i + 1);
      m.log_probs.push_back(0.0);
    } else {
      for (int to = space_->tau_min(); to <= space_->tau_max(); ++to) {
        const double p = boundary_prob(tau, to);
        if (p > 0.0) {
          m.cols.push_back(space_->row_offset(to));
          m.log_probs.push_back(std::log(p));
        }
      }
    }
    m.row_offsets.push_back(static_cast<std::uint32_t>(m.cols.size()));
  }
  return m;
}

StateIndex sample_beat_transition(
  const BeatStateSpace &space, StateIndex s, const TransitionParams &params, Rng &rng)
{
  return BeatTransitionModel(space, params).sample(s, rng);
}

SparseTransitions transition_log_matrix(const BeatStateSpace &space, const TransitionParams &params)
{
  return BeatTransitionModel(space, params).log_matrix();
}

BarTransitionModel::BarTransitionModel(const BarStateSpace &space, const TransitionParams &params)
: space_(&space), params_(params)
{
  params_.validate();
}

StateIndex BarTransitionModel::sample(StateIndex s, Rng &rng) const
{
  const int m = space_->meter(s);
  if (space_->position(s) + 1 < m) {
    return StateIndex(s.idx + 1);
  }
  const auto meters = space_->meters();
  int next = m;
  if (meters.size() > 1 && uniform01(rng) < params_.meter_change_prob) {
    auto pick = uniform_below(rng, meters.size() - 1);
    std::size_t k = 0;
    for (int candidate : meters) {
      if (candidate == m) {
        continue;
      }
      if (k++ == pick) {
        next = candidate;
        break;
      }
    }
  }
  return space_->index(0, next);
}

SparseTransitions BarTransitionModel::log_matrix() const
{
  const auto meters = space_->meters();
  SparseTransitions m;
  m.row_offsets.push_back(0);
  for (std::uint32_t i = 0; i < space_->size(); ++i) {
    const StateIndex s(i);
    const int meter = space_->meter(s);
    if (space_->position(s) + 1 < meter) {
      m.cols.push_back(i + 1);
      m.log_probs.push_back(0.0);
    } else {
      for (int to : meters) {
        double p;
        if (meters.size() == 1) {
          p = 1.0;
        } else if (to == meter) {
          p = 1.0 - params_.meter_change_prob;
        } else {
          p = params_.meter_change_prob / static_cast<double>(meters.size() - 1);
        }
        if (p > 0.0) {
          m.cols.push_back(space_->index(0, to).idx);
          m.log_probs.push_back(std::log(p));
        }
      }
    }
    m.row_offsets.push_back(static_cast<std::uint32_t>(m.cols.size()));
  }
  return m;
}

}  // namespace rtbeat
