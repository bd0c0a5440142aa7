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

#include "rtbeat/synth.hpp"

#include <algorithm>
#include <cmath>

#include "rtbeat/error.hpp"
#include "rtbeat/random.hpp"

namespace rtbeat {

void SynthSpec::validate() const
{
  if (!(sigma > 0.0)) {
    throw InvalidArgument("peak width sigma must be positive");
  }
  if (!(height >= 0.0 && height <= 1.0) || !(noise >= 0.0 && noise <= 1.0)) {
    throw InvalidArgument("peak height and noise level must lie in [0, 1]");
  }
  if (fps <= 0) {
    throw InvalidArgument("fps must be positive");
  }
  if (downbeat_flags.size() != beats.size()) {
    throw InvalidArgument("downbeat flags must parallel the beat list");
  }
  if (!std::is_sorted(beats.begin(), beats.end())) {
    throw InvalidArgument("beat times must be sorted");
  }
}

Annotation SynthSpec::annotation() const
{
  Annotation ann;
  ann.beats = beats;
  for (std::size_t i = 0; i < beats.size(); ++i) {
    if (downbeat_flags[i]) {
      ann.downbeats.push_back(beats[i]);
    }
  }
  return ann;
}

SynthSpec synth_spec_from(const Annotation &ann)
{
  SynthSpec spec;
  spec.beats = ann.beats;
  spec.downbeat_flags.assign(ann.beats.size(), false);
  std::size_t d = 0;
  for (std::size_t i = 0; i < ann.beats.size(); ++i) {
    while (d < ann.downbeats.size() && ann.downbeats[d] < ann.beats[i] - 1e-3) {
      ++d;
    }
    spec.downbeat_flags[i] = d < ann.downbeats.size() && std::abs(ann.downbeats[d] - ann.beats[i]) <= 1e-3;
  }
  return spec;
}

ActivationFile synthesize_activations(const SynthSpec &spec)
{
  spec.validate();
  const double end = spec.duration > 0.0 ? spec.duration : (spec.beats.empty() ? 1.0 : spec.beats.back() + 1.0);
  const auto frames = static_cast<std::size_t>(std::ceil(end * spec.fps - 1e-9));

  std::vector<double> beat(frames, 0.0);
  std::vector<double> downbeat(frames, 0.0);
  const double reach = 6.0 * spec.sigma;
  const double inv_two_var = 1.0 / (2.0 * spec.sigma * spec.sigma);
  for (std::size_t i = 0; i < spec.beats.size(); ++i) {
    const double tb = spec.beats[i];
    const auto lo = static_cast<std::int64_t>(std::floor((tb - reach) * spec.fps));
    const auto hi = static_cast<std::int64_t>(std::ceil((tb + reach) * spec.fps));
    for (std::int64_t f = std::max<std::int64_t>(0, lo); f <= hi && f < static_cast<std::int64_t>(frames); ++f) {
      const double dt = static_cast<double>(f) / spec.fps - tb;
      const double g = spec.height * std::exp(-dt * dt * inv_two_var);
      beat[static_cast<std::size_t>(f)] += g;
      if (spec.downbeat_flags[i]) {
        downbeat[static_cast<std::size_t>(f)] += g;
      }
    }
  }

  Rng rng(spec.seed);
  ActivationFile file;
  file.fps = spec.fps;
  file.frames.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const double nb = spec.noise * uniform01(rng);
    const double nd = spec.noise * uniform01(rng);
    file.frames[f].beat = std::clamp(std::min(1.0, beat[f]) + nb, 0.0, 1.0);
    file.frames[f].downbeat = std::clamp(std::min(1.0, downbeat[f]) + nd, 0.0, 1.0);
  }
  return file;
}

SynthSpec constant_tempo_spec(double bpm, double start, double end, int meter, int first_position)
{
  if (!(bpm > 0.0) || meter < 1) {
    throw InvalidArgument("tempo and meter must be positive");
  }
  SynthSpec spec;
  const double ibi = 60.0 / bpm;
  for (int k = 0; start + k * ibi < end - 1e-9; ++k) {
    spec.beats.push_back(start + k * ibi);
    spec.downbeat_flags.push_back((k + first_position) % meter == 0);
  }
  spec.duration = end;
  return spec;
}

}  // namespace rtbeat
