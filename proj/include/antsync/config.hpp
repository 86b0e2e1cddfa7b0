// Copyright 2026 The antsync Authors
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

// Simulation configuration and its key=value file format.
//
//   # comment
//   T = 0.01
//   tau = 0.65
//   segments = pi/12,500; 0,1000; pi/12,inf
//
// Absent keys keep their defaults; unknown keys are rejected.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "antsync/dynsys.hpp"
#include "antsync/scenario.hpp"

namespace antsync {

enum class Preset { kFull, kNoAnticipation };

inline std::string_view PresetName(Preset p) {
  return p == Preset::kFull ? "full" : "no-anticipation";
}

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

inline Preset ParsePreset(std::string_view text) {
  if (text == "full") return Preset::kFull;
  if (text == "no-anticipation") return Preset::kNoAnticipation;
  throw ConfigError("preset", "expected 'full' or 'no-anticipation', got '" + std::string(text) + "'");
}

struct SimConfig {
  double T = 0.01;          // step, s
  double duration = 100.0;  // s
  double tau = 0.65;        // perceptual delay, s
  double k = 1.0;           // anticipating feedback gain
  double kp = 1.0;
  double kd = 2.0;
  double gamma = 4.0;       // learning rate
  double window = 10.0;     // detector window, s
  double b_event = 3.0;
  double refractory = 2.0;  // s
  double sigma_floor = 1e-12;
  double g = 9.81;
  std::vector<RampSegment> segments = DefaultRamps();
  Preset preset = Preset::kFull;

  long Steps() const { return SamplesFor(duration, T, "duration"); }
  long DelaySamples() const { return SamplesFor(tau, T, "tau"); }
  long WindowSamples() const { return SamplesFor(window, T, "window"); }
};

namespace detail {

inline std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double ParseNumber(std::string_view text, const std::string& key) {
  text = Trim(text);
  double sign = 1.0;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    if (text.front() == '-') sign = -1.0;
    text.remove_prefix(1);
  }
  // "pi" and "pi/<number>" for slope angles.
  if (text.starts_with("pi")) {
    std::string_view rest = Trim(text.substr(2));
    if (rest.empty()) return sign * std::numbers::pi;
    if (rest.front() == '/') return sign * std::numbers::pi / ParseNumber(rest.substr(1), key);
    throw ConfigError(key, "cannot parse '" + std::string(text) + "'");
  }
  if (text == "inf" || text == "infinity") return sign * std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key, "cannot parse number '" + std::string(text) + "'");
  }
  return sign * value;
}

inline std::vector<RampSegment> ParseSegments(std::string_view text) {
  std::vector<RampSegment> out;
  while (!Trim(text).empty()) {
    const auto semi = text.find(';');
    std::string_view item = Trim(text.substr(0, semi));
    text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string_view::npos) {
      throw ConfigError("segments", "expected 'beta,length', got '" + std::string(item) + "'");
    }
    out.push_back({ParseNumber(item.substr(0, comma), "segments"),
                   ParseNumber(item.substr(comma + 1), "segments")});
  }
  return out;
}

}  // namespace detail

/// Checks the invariants a user-supplied configuration must satisfy.
inline void ValidateConfig(const SimConfig& c) {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be finite and > 0");
  };
  positive(c.T, "T");
  positive(c.k, "k");
  positive(c.kp, "kp");
  positive(c.kd, "kd");
  positive(c.gamma, "gamma");
  positive(c.window, "window");
  positive(c.b_event, "b_event");
  positive(c.sigma_floor, "sigma_floor");
  positive(c.g, "g");
  if (!(c.refractory >= 0.0) || !std::isfinite(c.refractory)) {
    throw ConfigError("refractory", "must be finite and >= 0");
  }
  if (!(c.tau >= 0.0)) throw ConfigError("tau", "must be >= 0");
  auto samples = [&](double seconds, const char* key) {
    try {
      return SamplesFor(seconds, c.T, key);
    } catch (const std::invalid_argument&) {
      throw ConfigError(key, "must be an integer multiple of T");
    }
  };
  samples(c.tau, "tau");
  samples(c.window, "window");
  samples(c.duration, "duration");
  if (!(c.duration > c.window)) throw ConfigError("duration", "must exceed window");
  if (c.segments.empty()) throw ConfigError("segments", "at least one segment is required");
  for (const auto& s : c.segments) {
    if (!std::isfinite(s.beta)) throw ConfigError("segments", "slope must be finite");
    if (!(s.length > 0.0)) throw ConfigError("segments", "lengths must be > 0");
  }
}

/// Parses key=value text over the defaults and validates the result.
inline SimConfig ParseConfig(std::string_view text) {
  SimConfig c;
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(detail::Trim(line.substr(0, eq)));
    const std::string_view value = detail::Trim(line.substr(eq + 1));
    for (const auto& s : seen) {
      if (s == key) throw ConfigError(key, "given more than once");
    }
    seen.push_back(key);

    auto num = [&] { return detail::ParseNumber(value, key); };
    if (key == "T") c.T = num();
    else if (key == "duration") c.duration = num();
    else if (key == "tau") c.tau = num();
    else if (key == "k") c.k = num();
    else if (key == "kp") c.kp = num();
    else if (key == "kd") c.kd = num();
    else if (key == "gamma") c.gamma = num();
    else if (key == "window") c.window = num();
    else if (key == "b_event") c.b_event = num();
    else if (key == "refractory") c.refractory = num();
    else if (key == "sigma_floor") c.sigma_floor = num();
    else if (key == "g") c.g = num();
    else if (key == "segments") c.segments = detail::ParseSegments(value);
    else if (key == "preset") c.preset = ParsePreset(value);
    else throw ConfigError(key, "unknown key");
  }
  ValidateConfig(c);
  return c;
}

inline SimConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

}  // namespace antsync
