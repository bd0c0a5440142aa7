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

#include "rtbeat/tracker.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <string>

#include "rtbeat/error.hpp"

namespace rtbeat {

namespace {

constexpr std::array<Method, 6> kMethods = {
  Method::Default, Method::Salience, Method::Past,
  Method::Combined, Method::OnlineDbn, Method::OfflineDbn,
};

bool near_any(std::span<const std::int64_t> sorted, std::int64_t now, int window)
{
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), now - window);
  return it != sorted.end() && *it <= now + window;
}

}  // namespace

std::string_view to_string(Method m)
{
  switch (m) {
    case Method::Default: return "default";
    case Method::Salience: return "salience";
    case Method::Past: return "past";
    case Method::Combined: return "combined";
    case Method::OnlineDbn: return "online-dbn";
    case Method::OfflineDbn: return "offline-dbn";
  }
  return "unknown";
}

Method parse_method(std::string_view name)
{
  for (Method m : kMethods) {
    if (to_string(m) == name) {
      return m;
    }
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::span<const Method> all_methods() { return kMethods; }

bool is_particle_method(Method m)
{
  return m == Method::Default || m == Method::Salience || m == Method::Past || m == Method::Combined;
}

bool uses_scheduled_decode(Method m)
{
  return m == Method::Past || m == Method::Combined || m == Method::OnlineDbn;
}

void TrackerConfig::validate() const
{
  if (fps <= 0) {
    throw InvalidArgument("fps must be positive");
  }
  if (particles == 0) {
    throw InvalidArgument("particle count must be at least 1");
  }
  if (!(period_s > 0.0)) {
    throw InvalidArgument("decode period T must be positive");
  }
  if (!(first_decode_at_s >= 0.0)) {
    throw InvalidArgument("first_decode_at must be non-negative");
  }
  if (!(injection_fraction > 0.0 && injection_fraction <= 1.0)) {
    throw InvalidArgument("injection_fraction must lie in (0, 1]");
  }
  if (!(salience_threshold > 0.0)) {
    throw InvalidArgument("salience_threshold must be positive");
  }
  if (extrapolation_match_window < 0) {
    throw InvalidArgument("extrapolation_match_window must be non-negative");
  }
  if (ibi_window == 0) {
    throw InvalidArgument("ibi_window must be at least 1");
  }
  if (!(extrapolation_slack_s >= 0.0)) {
    throw InvalidArgument("extrapolation_slack must be non-negative");
  }
  transitions.validate();
}

std::size_t TrackerConfig::injection_count() const
{
  const auto k = static_cast<std::size_t>(std::floor(injection_fraction * static_cast<double>(particles)));
  return std::max<std::size_t>(1, k);
}

Extrapolations compute_extrapolations(
  std::span<const ActivationFrame> history, const BeatStateSpace &beat_space,
  const BarStateSpace &bar_space, const TrackerConfig &config)
{
  Extrapolations ex;
  ex.snapshot_frames = static_cast<std::int64_t>(history.size());
  if (history.empty()) {
    return ex;
  }
  const auto decoded = viterbi_decode(history, beat_space, bar_space, config.transitions);
  if (decoded.beats.size() < 2) {
    return ex;
  }
  const double now_s = static_cast<double>(history.size()) / config.fps;
  const double horizon = now_s - decoded.beats.back() + config.period_s + config.extrapolation_slack_s;
  ex.ibi = inter_beat_interval(decoded.beats, config.ibi_window);
  ex.beats = extrapolate_beats(decoded.beats, horizon, config.ibi_window);
  if (!decoded.downbeats.empty()) {
    const auto lengths = bar_lengths(decoded.beats, decoded.downbeats);
    const int meter = lengths.empty() ? decoded.beat_meters.back() : modal_meter(lengths);
    ex.downbeats = extrapolate_downbeats(decoded.beats, decoded.downbeats, ex.beats, meter);
  }
  for (double t : ex.beats) {
    ex.beat_frames.push_back(std::llround(t * config.fps));
  }
  for (double t : ex.downbeats) {
    ex.downbeat_frames.push_back(std::llround(t * config.fps));
  }
  return ex;
}

Tracker::Tracker(TrackerConfig config)
: config_(std::move(config))
{
  config_.validate();
  beat_space_ = std::make_shared<const BeatStateSpace>(BeatStateSpace::build(
    config_.fps, config_.min_bpm, config_.max_bpm, config_.beat_window_divisor, config_.non_beat_norm));
  decoder_space_ = std::make_shared<const BeatStateSpace>(BeatStateSpace::build(
    config_.fps, config_.min_bpm, config_.max_bpm, config_.decoder_window_divisor, config_.non_beat_norm));
  bar_space_ = std::make_shared<const BarStateSpace>(BarStateSpace::build(config_.meters));
  beat_model_ = std::make_unique<BeatTransitionModel>(*beat_space_, config_.transitions);
  bar_model_ = std::make_unique<BarTransitionModel>(*bar_space_, config_.transitions);
  rng_.seed(config_.seed);
  if (is_particle_method(config_.method)) {
    beat_ps_ = init_particles(*beat_space_, config_.particles, rng_);
    bar_ps_ = init_particles(*bar_space_, config_.particles, rng_);
  }
}

Tracker::~Tracker()
{
  if (pending_.valid()) {
    pending_.wait();
  }
}

Tracker::Tracker(Tracker &&) noexcept = default;
Tracker &Tracker::operator=(Tracker &&) noexcept = default;

std::int64_t Tracker::decode_frame(std::size_t k) const
{
  return std::llround((config_.first_decode_at_s + static_cast<double>(k) * config_.period_s) * config_.fps);
}

double Tracker::clamp_tempo(double bpm) const
{
  return std::clamp(bpm, config_.min_bpm, config_.max_bpm);
}

void Tracker::poll_background(bool block)
{
  if (!pending_.valid()) {
    return;
  }
  if (!block && pending_.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
    return;
  }
  extrapolations_ = pending_.get();
  ++stats_.decodes;
}

void Tracker::scheduled_decode(std::int64_t now_frame)
{
  if (now_frame < 0 || now_frame > static_cast<std::int64_t>(history_.size())) {
    throw InvalidArgument("decode point lies beyond the buffered activations");
  }
  const std::span<const ActivationFrame> snapshot(history_.data(), static_cast<std::size_t>(now_frame));
  if (config_.decode_mode == DecodeMode::Synchronous) {
    extrapolations_ = compute_extrapolations(snapshot, *decoder_space_, *bar_space_, config_);
    ++stats_.decodes;
    return;
  }
  poll_background(true);
  pending_ = std::async(std::launch::async,
    [copy = std::vector<ActivationFrame>(snapshot.begin(), snapshot.end()),
     beat = decoder_space_, bar = bar_space_, cfg = config_]() {
      return compute_extrapolations(copy, *beat, *bar, cfg);
    });
}

std::vector<InjectionRequest> Tracker::decide_injections(const ActivationFrame &frame, std::int64_t now) const
{
  std::vector<InjectionRequest> out;
  if (!is_particle_method(config_.method) || config_.method == Method::Default) {
    return out;
  }
  const auto salient = salience_trigger(frame, config_.salience_threshold);
  bool past_beat = false;
  bool past_downbeat = false;
  if (extrapolations_) {
    past_beat = near_any(extrapolations_->beat_frames, now, config_.extrapolation_match_window);
    past_downbeat = near_any(extrapolations_->downbeat_frames, now, config_.extrapolation_match_window);
  }
  const std::size_t k = config_.injection_count();
  const std::size_t both = std::min(2 * k, config_.particles);

  auto add = [&](bool sal, bool past, InjectionTarget target) {
    switch (config_.method) {
      case Method::Salience:
        if (sal) out.push_back({k, target, InjectionCause::Salience});
        break;
      case Method::Past:
        if (past) out.push_back({k, target, InjectionCause::Extrapolation});
        break;
      case Method::Combined:
        if (sal && past) {
          out.push_back({both, target, InjectionCause::Both});
        } else if (config_.combine_mode == CombineMode::Union && (sal || past)) {
          out.push_back({k, target, sal ? InjectionCause::Salience : InjectionCause::Extrapolation});
        }
        break;
      default:
        break;
    }
  };
  add(salient.beat, past_beat, InjectionTarget::BeatStates);
  add(salient.downbeat, past_downbeat, InjectionTarget::DownbeatStates);
  return out;
}

std::vector<BeatEvent> Tracker::step_frame(const ActivationFrame &frame)
{
  validate(frame);
  const std::int64_t now = frame_index_;
  if (uses_scheduled_decode(config_.method)) {
    if (config_.decode_mode == DecodeMode::Background) {
      poll_background(false);
    }
    while (now == decode_frame(decodes_issued_)) {
      scheduled_decode(now);
      ++decodes_issued_;
    }
    while (decode_frame(decodes_issued_) < now) {
      ++decodes_issued_;
    }
  }
  if (config_.method != Method::Default && config_.method != Method::Salience) {
    history_.push_back(frame);
  }
  ++frame_index_;

  switch (config_.method) {
    case Method::OfflineDbn:
      return {};
    case Method::OnlineDbn:
      return step_online_dbn(now);
    default:
      return step_particle(frame, now);
  }
}

std::vector<BeatEvent> Tracker::step_online_dbn(std::int64_t now)
{
  std::vector<BeatEvent> events;
  if (!extrapolations_ || !std::binary_search(
        extrapolations_->beat_frames.begin(), extrapolations_->beat_frames.end(), now)) {
    return events;
  }
  const double ibi_frames = extrapolations_->ibi * config_.fps;
  const double min_gap = std::max(0.5 * ibi_frames, 30.0 * config_.fps / config_.max_bpm - 1e-9);
  if (last_emit_frame_ && static_cast<double>(now - *last_emit_frame_) < min_gap) {
    return events;
  }
  BeatEvent ev;
  ev.frame = now;
  ev.time = static_cast<double>(now) / config_.fps;
  ev.is_downbeat = std::binary_search(
    extrapolations_->downbeat_frames.begin(), extrapolations_->downbeat_frames.end(), now);
  ev.tempo_bpm = clamp_tempo(60.0 / extrapolations_->ibi);
  last_emit_frame_ = now;
  events.push_back(ev);
  return events;
}

std::vector<BeatEvent> Tracker::step_particle(const ActivationFrame &frame, std::int64_t now)
{
  const auto requests = decide_injections(frame, now);
  std::vector<InjectionRequest> beat_requests;
  for (const auto &r : requests) {
    if (r.target == InjectionTarget::BeatStates) {
      beat_requests.push_back(r);
    } else {
      last_downbeat_request_ = now;
      last_downbeat_cause_ = r.cause;
      last_downbeat_count_ = r.count;
    }
  }

  const auto res = step(beat_ps_, *beat_space_, *beat_model_, frame, beat_requests, rng_, config_.removal_pool);
  ++stats_.steps;
  stats_.injected += res.injected;
  if (beat_ps_.size() != config_.particles) {
    ++stats_.conservation_violations;
  }

  const auto est = estimate_phase(beat_ps_, *beat_space_);
  const bool in_window = est.phase_fraction * est.period < beat_space_->beat_window(est.period);
  const bool entered = in_window && !prev_in_window_;
  prev_in_window_ = in_window;

  std::vector<BeatEvent> events;
  if (!entered) {
    return events;
  }
  const double min_gap = std::max(0.5 * est.period, 30.0 * config_.fps / config_.max_bpm - 1e-9);
  if (last_emit_frame_ && static_cast<double>(now - *last_emit_frame_) < min_gap) {
    return events;
  }

  std::vector<InjectionRequest> bar_requests;
  if (last_downbeat_request_ && now - *last_downbeat_request_ <= config_.extrapolation_match_window) {
    bar_requests.push_back({last_downbeat_count_, InjectionTarget::DownbeatStates, last_downbeat_cause_});
    last_downbeat_request_.reset();
  }
  const auto bar_res = step(bar_ps_, *bar_space_, *bar_model_, frame, bar_requests, rng_, config_.removal_pool);
  ++stats_.steps;
  stats_.injected += bar_res.injected;
  if (bar_ps_.size() != config_.particles) {
    ++stats_.conservation_violations;
  }

  BeatEvent ev;
  ev.frame = now;
  ev.time = static_cast<double>(now) / config_.fps;
  ev.is_downbeat = bar_space_->is_downbeat_state(estimate_bar_state(bar_ps_, *bar_space_));
  ev.tempo_bpm = clamp_tempo(60.0 * config_.fps / est.period);
  last_emit_frame_ = now;
  events.push_back(ev);
  return events;
}

std::vector<BeatEvent> Tracker::finalize()
{
  if (finalized_) {
    return {};
  }
  finalized_ = true;
  if (pending_.valid()) {
    pending_.wait();
  }
  std::vector<BeatEvent> events;
  if (config_.method != Method::OfflineDbn || history_.empty()) {
    return events;
  }
  const auto decoded = viterbi_decode(history_, *decoder_space_, *bar_space_, config_.transitions);
  ++stats_.decodes;
  std::size_t d = 0;
  for (auto f : decoded.beat_frames) {
    BeatEvent ev;
    ev.frame = f;
    ev.time = static_cast<double>(f) / config_.fps;
    while (d < decoded.downbeat_frames.size() && decoded.downbeat_frames[d] < f) {
      ++d;
    }
    ev.is_downbeat = d < decoded.downbeat_frames.size() && decoded.downbeat_frames[d] == f;
    ev.tempo_bpm = clamp_tempo(60.0 * config_.fps / decoder_space_->period(decoded.states[static_cast<std::size_t>(f)]));
    events.push_back(ev);
  }
  return events;
}

std::vector<BeatEvent> track(std::span<const ActivationFrame> activations, const TrackerConfig &config)
{
  Tracker tracker(config);
  std::vector<BeatEvent> events;
  for (const auto &frame : activations) {
    auto ev = tracker.step_frame(frame);
    events.insert(events.end(), ev.begin(), ev.end());
  }
  auto tail = tracker.finalize();
  events.insert(events.end(), tail.begin(), tail.end());
  return events;
}

std::vector<BeatEvent> online_dbn_track(std::span<const ActivationFrame> activations, TrackerConfig config)
{
  config.method = Method::OnlineDbn;
  return track(activations, config);
}

}  // namespace rtbeat
