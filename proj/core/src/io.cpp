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

#include "rtbeat/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "rtbeat/error.hpp"

namespace rtbeat {

namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double &out)
{
  s = trim(s);
  if (s.empty()) {
    return false;
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_long(std::string_view s, long &out)
{
  s = trim(s);
  if (s.empty()) {
    return false;
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_in(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path &path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void check_written(const std::ostream &out, const std::filesystem::path &path)
{
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

}  // namespace

ActivationFile parse_activations(std::istream &in)
{
  ActivationFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  constexpr std::string_view kPrefix = "# fps=";

  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (!have_header) {
      long fps = 0;
      if (view.substr(0, kPrefix.size()) != kPrefix || !parse_long(view.substr(kPrefix.size()), fps)) {
        throw MissingHeaderError("expected '# fps=<int>' header", lineno);
      }
      if (fps <= 0) {
        throw ValueRangeError("fps must be positive", lineno);
      }
      file.fps = static_cast<int>(fps);
      have_header = true;
      continue;
    }
    if (view.empty()) {
      continue;
    }
    const auto comma = view.find(',');
    ActivationFrame frame;
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos ||
        !parse_double(view.substr(0, comma), frame.beat) ||
        !parse_double(view.substr(comma + 1), frame.downbeat)) {
      throw MalformedRowError("expected 'beat,downbeat' row, got '" + std::string(view) + "'", lineno);
    }
    if (!is_valid(frame)) {
      throw ValueRangeError("activation outside [0, 1] in '" + std::string(view) + "'", lineno);
    }
    file.frames.push_back(frame);
  }
  if (!have_header) {
    throw MissingHeaderError("expected '# fps=<int>' header", lineno + 1);
  }
  return file;
}

ActivationFile read_activations(const std::filesystem::path &path)
{
  auto in = open_in(path);
  return parse_activations(in);
}

void write_activations(std::ostream &out, const ActivationFile &file)
{
  out << "# fps=" << file.fps << '\n';
  char buf[64];
  for (const auto &f : file.frames) {
    const int n = std::snprintf(buf, sizeof(buf), "%.6f,%.6f\n", f.beat, f.downbeat);
    out.write(buf, n);
  }
}

void write_activations(const std::filesystem::path &path, const ActivationFile &file)
{
  auto out = open_out(path);
  write_activations(out, file);
  check_written(out, path);
}

Annotation parse_annotations(std::istream &in)
{
  Annotation ann;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    const auto sep = view.find_first_of(" \t");
    double t = 0.0;
    long position = 0;
    if (sep == std::string_view::npos || !parse_double(view.substr(0, sep), t) ||
        !parse_long(view.substr(sep + 1), position)) {
      throw MalformedRowError("expected '<time>\\t<position>', got '" + std::string(view) + "'", lineno);
    }
    if (t < 0.0 || position < 0) {
      throw ValueRangeError("negative time or bar position", lineno);
    }
    if (!ann.beats.empty() && t <= ann.beats.back()) {
      throw NonMonotoneError("beat times must be strictly increasing", lineno);
    }
    ann.beats.push_back(t);
    if (position == 1) {
      ann.downbeats.push_back(t);
    }
  }
  return ann;
}

Annotation read_annotations(const std::filesystem::path &path)
{
  auto in = open_in(path);
  return parse_annotations(in);
}

void write_annotations(std::ostream &out, const Annotation &ann)
{
  char buf[64];
  std::size_t d = 0;
  long position = 2;
  for (double t : ann.beats) {
    while (d < ann.downbeats.size() && ann.downbeats[d] < t - 1e-3) {
      ++d;
    }
    if (d < ann.downbeats.size() && std::abs(ann.downbeats[d] - t) <= 1e-3) {
      position = 1;
    }
    const int n = std::snprintf(buf, sizeof(buf), "%.6f\t%ld\n", t, position);
    out.write(buf, n);
    ++position;
  }
}

void write_annotations(const std::filesystem::path &path, const Annotation &ann)
{
  auto out = open_out(path);
  write_annotations(out, ann);
  check_written(out, path);
}

void write_events(std::ostream &out, std::span<const BeatEvent> events)
{
  char buf[64];
  for (const auto &e : events) {
    const int n = std::snprintf(buf, sizeof(buf), "%.6f\t%d\n", e.time, e.is_downbeat ? 1 : 0);
    out.write(buf, n);
  }
}

void write_events(const std::filesystem::path &path, std::span<const BeatEvent> events)
{
  auto out = open_out(path);
  write_events(out, events);
  check_written(out, path);
}

TrackerConfig parse_config(const std::string &json_text, TrackerConfig base)
{
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InvalidArgument("config must be a JSON object");
  }
  TrackerConfig cfg = std::move(base);
  try {
    for (const auto &[key, value] : doc.items()) {
      if (key == "fps") cfg.fps = value.get<int>();
      else if (key == "min_bpm") cfg.min_bpm = value.get<double>();
      else if (key == "max_bpm") cfg.max_bpm = value.get<double>();
      else if (key == "meters") cfg.meters = value.get<std::vector<int>>();
      else if (key == "particles") cfg.particles = value.get<std::size_t>();
      else if (key == "salience_threshold") cfg.salience_threshold = value.get<double>();
      else if (key == "period_s") cfg.period_s = value.get<double>();
      else if (key == "first_decode_at_s") cfg.first_decode_at_s = value.get<double>();
      else if (key == "injection_fraction") cfg.injection_fraction = value.get<double>();
      else if (key == "extrapolation_match_window") cfg.extrapolation_match_window = value.get<int>();
      else if (key == "method") cfg.method = parse_method(value.get<std::string>());
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "tempo_change_prob") cfg.transitions.tempo_change_prob = value.get<double>();
      else if (key == "tempo_change_decay") cfg.transitions.tempo_change_decay = value.get<double>();
      else if (key == "meter_change_prob") cfg.transitions.meter_change_prob = value.get<double>();
      else if (key == "beat_window_divisor") cfg.beat_window_divisor = value.get<int>();
      else if (key == "decoder_window_divisor") cfg.decoder_window_divisor = value.get<int>();
      else if (key == "non_beat_norm") cfg.non_beat_norm = value.get<double>();
      else if (key == "ibi_window") cfg.ibi_window = value.get<std::size_t>();
      else if (key == "extrapolation_slack_s") cfg.extrapolation_slack_s = value.get<double>();
      else if (key == "combine_mode") {
        const auto v = value.get<std::string>();
        if (v == "intersection") cfg.combine_mode = CombineMode::Intersection;
        else if (v == "union") cfg.combine_mode = CombineMode::Union;
        else throw InvalidArgument("combine_mode must be 'intersection' or 'union'");
      } else if (key == "removal_pool") {
        const auto v = value.get<std::string>();
        if (v == "all") cfg.removal_pool = RemovalPool::All;
        else if (v == "survivors") cfg.removal_pool = RemovalPool::Survivors;
        else throw InvalidArgument("removal_pool must be 'all' or 'survivors'");
      } else if (key == "decode_mode") {
        const auto v = value.get<std::string>();
        if (v == "synchronous") cfg.decode_mode = DecodeMode::Synchronous;
        else if (v == "background") cfg.decode_mode = DecodeMode::Background;
        else throw InvalidArgument("decode_mode must be 'synchronous' or 'background'");
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("ill-typed config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

TrackerConfig read_config(const std::filesystem::path &path, TrackerConfig base)
{
  auto in = open_in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace rtbeat
