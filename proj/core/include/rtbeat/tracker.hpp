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

#ifndef RTBEAT__TRACKER_HPP_
#define RTBEAT__TRACKER_HPP_

#include <cstdint>
#include <future>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtbeat/dbn_decoder.hpp"
#include "rtbeat/models.hpp"
#include "rtbeat/particle_filter.hpp"
#include "rtbeat/random.hpp"
#include "rtbeat/state_space.hpp"

namespace rtbeat {

enum class Method { Default, Salience, Past, Combined, OnlineDbn, OfflineDbn };

// "default", "salience", "past", "combined", "online-dbn", "offline-dbn".
std::string_view to_string(Method m);
// Throws InvalidArgument on an unknown name.
Method parse_method(std::string_view name);
std::span<const Method> all_methods();

bool is_particle_method(Method m);
bool uses_scheduled_decode(Method m);

enum class CombineMode { Intersection, Union };
enum class DecodeMode {
  Synchronous,  // decode at the scheduled frame boundary, deterministic
  Background,   // decode on a worker thread, apply when finished
};

struct TrackerConfig {
  int fps = 50;
  double min_bpm = 60.0;
  double max_bpm = 180.0;
  std::vector<int> meters{2, 3, 4};
  std::size_t particles = 1500;
  // Values above 1 never trigger.
  double salience_threshold = 0.4;
  double period_s = 6.0;           // decode cadence T
  double first_decode_at_s = 5.0;
  double injection_fraction = 0.1;
  CombineMode combine_mode = CombineMode::Intersection;
  int extrapolation_match_window = 3;  // frames
  Method method = Method::Default;
  std::uint64_t seed = 0;

  // Tuned on synthetic streams; the model-level defaults stay untouched.
  TransitionParams transitions{.tempo_change_prob = 0.2};
  int beat_window_divisor = 6;     // particle filters
  int decoder_window_divisor = 8;  // Viterbi decoding (offline, online, past)
  double non_beat_norm = kDefaultNonBeatNorm;
  RemovalPool removal_pool = RemovalPool::All;
  std::size_t ibi_window = kDefaultIbiWindow;
  double extrapolation_slack_s = 1.0;
  DecodeMode decode_mode = DecodeMode::Synchronous;

  // Throws InvalidArgument on the first violated constraint.
  void validate() const;
  std::size_t injection_count() const;
};

struct BeatEvent {
  double time = 0.0;  // seconds, frame / fps
  bool is_downbeat = false;
  double tempo_bpm = 0.0;
  std::int64_t frame = 0;

  bool operator==(const BeatEvent &) const = default;
};

// Beat/downbeat continuations derived from one decode of the past.
struct Extrapolations {
  std::int64_t snapshot_frames = 0;  // frames [0, snapshot_frames) were decoded
  double ibi = 0.0;                  // seconds
  std::vector<double> beats;
  std::vector<double> downbeats;
  std::vector<std::int64_t> beat_frames;
  std::vector<std::int64_t> downbeat_frames;
};

// Decodes `history` (the first history.size() frames of a stream) and
// continues the result for T + slack seconds past the end of the snapshot.
Extrapolations compute_extrapolations(
  std::span<const ActivationFrame> history, const BeatStateSpace &beat_space,
  const BarStateSpace &bar_space, const TrackerConfig &config);

struct FilterStats {
  std::uint64_t steps = 0;
  std::uint64_t injected = 0;
  std::uint64_t conservation_violations = 0;
  std::uint64_t decodes = 0;
};

// One tracker per stream. Online methods emit causally from step_frame;
// offline-dbn buffers and emits everything from finalize().
class Tracker {
public:
  explicit Tracker(TrackerConfig config);
  ~Tracker();

  Tracker(const Tracker &) = delete;
  Tracker &operator=(const Tracker &) = delete;
  Tracker(Tracker &&) noexcept;
  Tracker &operator=(Tracker &&) noexcept;

  // Throws InvalidArgument for activations outside [0, 1].
  std::vector<BeatEvent> step_frame(const ActivationFrame &frame);

  // Injection requests the configured method would issue for `frame` at
  // frame index `now`, against the current extrapolations.
  std::vector<InjectionRequest> decide_injections(const ActivationFrame &frame, std::int64_t now) const;

  // Decodes the buffered frames [0, now_frame) and replaces the current
  // extrapolations. Called automatically at first_decode_at + k*T.
  void scheduled_decode(std::int64_t now_frame);

  std::vector<BeatEvent> finalize();

  const TrackerConfig &config() const noexcept { return config_; }
  const BeatStateSpace &beat_space() const noexcept { return *beat_space_; }
  const BeatStateSpace &decoder_space() const noexcept { return *decoder_space_; }
  const BarStateSpace &bar_space() const noexcept { return *bar_space_; }
  const ParticleSet &beat_particles() const noexcept { return beat_ps_; }
  const ParticleSet &bar_particles() const noexcept { return bar_ps_; }
  const FilterStats &stats() const noexcept { return stats_; }
  const std::optional<Extrapolations> &extrapolations() const noexcept { return extrapolations_; }
  std::int64_t frames_seen() const noexcept { return frame_index_; }
  // Frame indices at which scheduled decodes fire.
  std::int64_t decode_frame(std::size_t k) const;

private:
  void poll_background(bool block);
  std::vector<BeatEvent> step_online_dbn(std::int64_t now);
  std::vector<BeatEvent> step_particle(const ActivationFrame &frame, std::int64_t now);
  double clamp_tempo(double bpm) const;

  TrackerConfig config_;
  std::shared_ptr<const BeatStateSpace> beat_space_;
  std::shared_ptr<const BeatStateSpace> decoder_space_;
  std::shared_ptr<const BarStateSpace> bar_space_;
  std::unique_ptr<BeatTransitionModel> beat_model_;
  std::unique_ptr<BarTransitionModel> bar_model_;
  Rng rng_;
  ParticleSet beat_ps_;
  ParticleSet bar_ps_;

  std::vector<ActivationFrame> history_;
  std::int64_t frame_index_ = 0;
  std::size_t decodes_issued_ = 0;
  std::optional<Extrapolations> extrapolations_;
  std::future<Extrapolations> pending_;

  bool prev_in_window_ = false;
  std::optional<std::int64_t> last_emit_frame_;
  std::optional<std::int64_t> last_downbeat_request_;
  InjectionCause last_downbeat_cause_ = InjectionCause::Salience;
  std::size_t last_downbeat_count_ = 0;
  bool finalized_ = false;
  FilterStats stats_;
};

// Runs a whole stream through a fresh tracker and returns every event,
// including those produced by finalize().
std::vector<BeatEvent> track(std::span<const ActivationFrame> activations, const TrackerConfig &config);

// Online-DBN baseline over a complete stream; same as track() with
// method = online-dbn.
std::vector<BeatEvent> online_dbn_track(
  std::span<const ActivationFrame> activations, TrackerConfig config);

}  // namespace rtbeat

#endif  // RTBEAT__TRACKER_HPP_
