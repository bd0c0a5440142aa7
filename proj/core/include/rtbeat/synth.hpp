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

#ifndef RTBEAT__SYNTH_HPP_
#define RTBEAT__SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "rtbeat/eval.hpp"
#include "rtbeat/io.hpp"

namespace rtbeat {

// Ground truth plus rendering parameters for a synthetic activation stream.
struct SynthSpec {
  std::vector<double> beats;         // seconds, sorted
  std::vector<bool> downbeat_flags;  // parallel to beats
  double sigma = 0.04;               // Gaussian peak width, seconds
  double height = 0.95;
  double noise = 0.05;               // uniform noise amplitude in [0, noise]
  int fps = 50;
  std::uint64_t seed = 0;
  // Stream length in seconds; <= 0 means last beat + 1 s.
  double duration = 0.0;

  void validate() const;
  Annotation annotation() const;
};

SynthSpec synth_spec_from(const Annotation &ann);

// Beat channel: sum of height * exp(-(t - t_b)^2 / (2 sigma^2)) over beats,
// clipped to [0, 1], plus noise. Downbeat channel: same over downbeats.
ActivationFile synthesize_activations(const SynthSpec &spec);

// Beat grid helper: beats from `start` at constant `bpm` strictly before `end`
// (also the stream duration),
// every `meter`-th beat (starting at `first_position`) flagged as downbeat.
SynthSpec constant_tempo_spec(double bpm, double start, double end, int meter, int first_position = 0);

}  // namespace rtbeat

#endif  // RTBEAT__SYNTH_HPP_
