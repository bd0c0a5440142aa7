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

#ifndef RTBEAT__IO_HPP_
#define RTBEAT__IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rtbeat/eval.hpp"
#include "rtbeat/models.hpp"
#include "rtbeat/tracker.hpp"

namespace rtbeat {

// Text activation file:
//
//   # fps=50
//   0.012000,0.003000
//   0.950000,0.020000
//
// One `beat,downbeat` row per frame, '.' decimal separator.
struct ActivationFile {
  int fps = 0;
  std::vector<ActivationFrame> frames;
};

// Throw MissingHeaderError, MalformedRowError or ValueRangeError (each with
// the offending line number), or IoError when the file cannot be opened.
ActivationFile parse_activations(std::istream &in);
ActivationFile read_activations(const std::filesystem::path &path);

void write_activations(std::ostream &out, const ActivationFile &file);
void write_activations(const std::filesystem::path &path, const ActivationFile &file);

// `<time>\t<position>` per line; position 1 is a downbeat, any other
// non-negative integer a plain beat. Blank lines and '#' comments are
// skipped. Times must be strictly increasing (NonMonotoneError).
Annotation parse_annotations(std::istream &in);
Annotation read_annotations(const std::filesystem::path &path);

void write_annotations(std::ostream &out, const Annotation &ann);
void write_annotations(const std::filesystem::path &path, const Annotation &ann);

// Tracker output: `<time>\t<1|0>` per event, 1 marking a downbeat.
void write_events(std::ostream &out, std::span<const BeatEvent> events);
void write_events(const std::filesystem::path &path, std::span<const BeatEvent> events);

// JSON object whose keys mirror TrackerConfig fields; absent keys keep the
// values already in `base`. Throws InvalidArgument on unknown keys or
// ill-typed values.
TrackerConfig parse_config(const std::string &json_text, TrackerConfig base = {});
TrackerConfig read_config(const std::filesystem::path &path, TrackerConfig base = {});

}  // namespace rtbeat

#endif  // RTBEAT__IO_HPP_
