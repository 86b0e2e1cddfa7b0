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

// CSV output: per-step trace, detected events, and analytic slope-change
// times. Numbers use the shortest representation that reads back to the
// same double.

#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "antsync/segment.hpp"
#include "antsync/simulation.hpp"

namespace antsync {

inline constexpr std::array<std::string_view, 26> kTraceColumns = {
    "t",        "x_v1",     "x_v2",     "x_p1",     "x_p2",     "xtau_v1", "xtau_v2",
    "xtau_p1",  "xtau_p2",  "ystar_v1", "ystar_v2", "ystar_p1", "ystar_p2", "y_v1",
    "y_v2",     "y_p1",     "y_p2",     "alpha_1",  "alpha_2",  "theta_1", "theta_2",
    "u_1",      "u_2",      "V",        "b_V",      "event"};

inline constexpr std::array<std::string_view, 5> kEventColumns = {"t", "b_value", "V", "mu",
                                                                  "sigma"};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string FormatDouble(double v) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buf.data(), ptr);
}

namespace detail {

template <std::size_t N>
void AppendVec(std::string& line, const Vec<N>& v) {
  for (double d : v) {
    line += ',';
    line += FormatDouble(d);
  }
}

template <std::size_t N>
void AppendHeader(std::string& line, const std::array<std::string_view, N>& cols) {
  for (std::size_t i = 0; i < N; ++i) {
    if (i) line += ',';
    line += cols[i];
  }
  line += '\n';
}

inline std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline void FinishWrite(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::vector<double> SplitNumbers(std::string_view line) {
  std::vector<double> out;
  while (true) {
    const auto comma = line.find(',');
    std::string_view cell = line.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw IoError("bad numeric cell '" + std::string(cell) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

inline void FormatTrace(std::ostream& out, const std::vector<TraceRecord>& trace) {
  std::string line;
  detail::AppendHeader(line, kTraceColumns);
  out << line;
  for (const auto& r : trace) {
    line = FormatDouble(r.t);
    detail::AppendVec(line, r.x);
    detail::AppendVec(line, r.x_tau);
    detail::AppendVec(line, r.y_star);
    detail::AppendVec(line, r.y);
    detail::AppendVec(line, r.alpha);
    detail::AppendVec(line, r.theta);
    detail::AppendVec(line, r.u);
    line += ',' + FormatDouble(r.V);
    line += ',' + FormatDouble(r.b_V);
    line += r.event ? ",1\n" : ",0\n";
    out << line;
  }
}

inline void WriteTrace(const std::vector<TraceRecord>& trace, const std::string& path) {
  auto out = detail::OpenForWrite(path);
  FormatTrace(out, trace);
  detail::FinishWrite(out, path);
}

inline void FormatEvents(std::ostream& out, const std::vector<EventBoundary>& events) {
  std::string line;
  detail::AppendHeader(line, kEventColumns);
  out << line;
  for (const auto& e : events) {
    out << FormatDouble(e.time) << ',' << FormatDouble(e.b_value) << ',' << FormatDouble(e.V_value)
        << ',' << FormatDouble(e.mu) << ',' << FormatDouble(e.sigma) << '\n';
  }
}

inline void WriteEvents(const std::vector<EventBoundary>& events, const std::string& path) {
  auto out = detail::OpenForWrite(path);
  FormatEvents(out, events);
  detail::FinishWrite(out, path);
}

/// Sidecar with the analytic boundary-crossing instants: `segment,t`, where
/// segment is the index entered at t.
inline void WriteGroundTruth(const std::vector<double>& slope_changes, const std::string& path) {
  auto out = detail::OpenForWrite(path);
  out << "segment,t\n";
  for (std::size_t i = 0; i < slope_changes.size(); ++i) {
    out << (i + 1) << ',' << FormatDouble(slope_changes[i]) << '\n';
  }
  detail::FinishWrite(out, path);
}

inline std::vector<TraceRecord> ParseTrace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trace");
  std::string expected;
  detail::AppendHeader(expected, kTraceColumns);
  expected.pop_back();
  if (line != expected) throw IoError("unexpected trace header");
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = detail::SplitNumbers(line);
    if (v.size() != kTraceColumns.size()) throw IoError("trace row has wrong column count");
    TraceRecord r;
    std::size_t i = 0;
    r.t = v[i++];
    for (auto* vec : {&r.x, &r.x_tau, &r.y_star, &r.y}) {
      for (double& d : *vec) d = v[i++];
    }
    for (auto* vec : {&r.alpha, &r.theta, &r.u}) {
      for (double& d : *vec) d = v[i++];
    }
    r.V = v[i++];
    r.b_V = v[i++];
    r.event = v[i++] != 0.0;
    out.push_back(r);
  }
  return out;
}

inline std::vector<TraceRecord> ReadTrace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ParseTrace(in);
}

}  // namespace antsync
