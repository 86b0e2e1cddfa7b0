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

// Minimal SVG line charts for simulation traces.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "antsync/simulation.hpp"
#include "antsync/trace_io.hpp"

namespace antsync {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct Marker {
  double x = 0.0;
  std::string label;
};

class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  LineChart& Add(Series s) {
    series_.push_back(std::move(s));
    return *this;
  }
  LineChart& Mark(Marker m) {
    markers_.push_back(std::move(m));
    return *this;
  }

  std::string Render() const {
    double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
    for (const auto& s : series_) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        x0 = std::min(x0, s.x[i]);
        x1 = std::max(x1, s.x[i]);
        y0 = std::min(y0, s.y[i]);
        y1 = std::max(y1, s.y[i]);
      }
    }
    if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0;
    if (!(y0 <= y1)) y0 = 0.0, y1 = 1.0;
    if (x1 - x0 <= 0.0) x1 = x0 + 1.0;
    if (y1 - y0 <= 0.0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * PlotWidth(); };
    auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * PlotHeight(); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << Escape(title_) << "</text>\n";

    for (double t : Ticks(x0, x1)) {
      o << "<line x1=\"" << px(t) << "\" y1=\"" << kTop << "\" x2=\"" << px(t) << "\" y2=\""
        << kTop + PlotHeight() << "\" stroke=\"#e5e5e5\"/>\n";
      o << "<text x=\"" << px(t) << "\" y=\"" << kTop + PlotHeight() + 16
        << "\" text-anchor=\"middle\">" << Label(t) << "</text>\n";
    }
    for (double t : Ticks(y0, y1)) {
      o << "<line x1=\"" << kLeft << "\" y1=\"" << py(t) << "\" x2=\"" << kLeft + PlotWidth()
        << "\" y2=\"" << py(t) << "\" stroke=\"#e5e5e5\"/>\n";
      o << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">"
        << Label(t) << "</text>\n";
    }
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << PlotWidth()
      << "\" height=\"" << PlotHeight() << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << kLeft + PlotWidth() / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">" << Escape(x_label_) << "</text>\n";
    o << "<text transform=\"translate(16," << kTop + PlotHeight() / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(y_label_) << "</text>\n";

    for (const auto& m : markers_) {
      o << "<line class=\"marker\" x1=\"" << px(m.x) << "\" y1=\"" << kTop << "\" x2=\""
        << px(m.x) << "\" y2=\"" << kTop + PlotHeight()
        << "\" stroke=\"#d62728\" stroke-dasharray=\"2,3\"/>\n";
      if (!m.label.empty()) {
        o << "<text x=\"" << px(m.x) + 3 << "\" y=\"" << kTop + 12 << "\" fill=\"#d62728\">"
          << Escape(m.label) << "</text>\n";
      }
    }

    for (const auto& s : series_) {
      if (s.x.empty()) continue;
      const std::size_t stride = std::max<std::size_t>(1, s.x.size() / kMaxPoints);
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\"";
      if (s.dashed) o << " stroke-dasharray=\"6,4\"";
      o << " points=\"";
      for (std::size_t i = 0; i < s.x.size(); i += stride) {
        o << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
      }
      o << px(s.x.back()) << ',' << py(s.y.back()) << "\"/>\n";
    }

    double ly = kTop + 8;
    for (const auto& s : series_) {
      const double lx = kLeft + PlotWidth() + 12;
      o << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
      o << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4 << "\">" << Escape(s.name)
        << "</text>\n";
      ly += 18;
    }
    o << "</svg>\n";
    return o.str();
  }

  void Save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << Render();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static constexpr int kWidth = 820;
  static constexpr int kHeight = 420;
  static constexpr int kLeft = 70;
  static constexpr int kTop = 34;
  static constexpr int kRightPanel = 150;
  static constexpr int kBottom = 50;
  static constexpr std::size_t kMaxPoints = 4000;

  static constexpr double PlotWidth() { return kWidth - kLeft - kRightPanel; }
  static constexpr double PlotHeight() { return kHeight - kTop - kBottom; }

  static std::vector<double> Ticks(double lo, double hi) {
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      step = m * mag;
      if (step >= raw) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
      out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
  }

  static std::string Label(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  }

  static std::string Escape(const std::string& in) {
    std::string out;
    for (char c : in) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
      }
    }
    return out;
  }

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::vector<Marker> markers_;
};

namespace detail {

template <class Fn>
Series Extract(const std::vector<TraceRecord>& trace, std::string name, std::string color,
               Fn&& fn, bool dashed = false, double t_max = std::numeric_limits<double>::infinity()) {
  Series s{std::move(name), {}, {}, std::move(color), dashed};
  for (const auto& r : trace) {
    if (r.t > t_max) break;
    s.x.push_back(r.t);
    s.y.push_back(fn(r));
  }
  return s;
}

inline LineChart ImageChart(const SimResult& run) {
  const bool full = run.config.preset == Preset::kFull;
  LineChart chart(full ? "Image coordinates, full architecture"
                       : "Image coordinates, no anticipation",
                  "t [s]", "image position [m]");
  chart.Add(Extract(run.trace, "x1", "#1f77b4", [](const TraceRecord& r) { return r.x[2]; }));
  chart.Add(Extract(run.trace, "x2", "#ff7f0e", [](const TraceRecord& r) { return r.x[3]; }));
  if (full) {
    chart.Add(Extract(run.trace, "y1", "#1f77b4", [](const TraceRecord& r) { return r.y[2]; }, true));
    chart.Add(Extract(run.trace, "y2", "#ff7f0e", [](const TraceRecord& r) { return r.y[3]; }, true));
  } else {
    chart.Add(Extract(run.trace, "y*1", "#1f77b4",
                      [](const TraceRecord& r) { return r.y_star[2]; }, true));
    chart.Add(Extract(run.trace, "y*2", "#ff7f0e",
                      [](const TraceRecord& r) { return r.y_star[3]; }, true));
  }
  return chart;
}

}  // namespace detail

/// Writes the figure set for `primary`: parameter estimates against the
/// truth, image coordinates (for `primary` and, when given, `comparison`),
/// V over the first 10 s, and ball v2 with the detected boundaries.
/// Returns the written paths; an empty trace writes nothing.
inline std::vector<std::filesystem::path> EmitPlots(const SimResult& primary,
                                                    const SimResult* comparison,
                                                    const std::filesystem::path& outdir) {
  std::vector<std::filesystem::path> written;
  if (primary.trace.empty()) {
    std::cerr << "warning: empty trace, no plots written\n";
    return written;
  }
  std::filesystem::create_directories(outdir);
  auto save = [&](const LineChart& chart, const char* name) {
    const auto path = outdir / name;
    chart.Save(path);
    written.push_back(path);
  };
  const auto& tr = primary.trace;

  LineChart alpha("Parameter estimates", "t [s]", "[m/s^2]");
  alpha.Add(detail::Extract(tr, "alpha1", "#1f77b4", [](const TraceRecord& r) { return r.alpha[0]; }));
  alpha.Add(detail::Extract(tr, "alpha2", "#ff7f0e", [](const TraceRecord& r) { return r.alpha[1]; }));
  alpha.Add(detail::Extract(tr, "theta1", "#1f77b4", [](const TraceRecord& r) { return r.theta[0]; }, true));
  alpha.Add(detail::Extract(tr, "theta2", "#ff7f0e", [](const TraceRecord& r) { return r.theta[1]; }, true));
  save(alpha, "alpha.svg");

  const SimResult* full = primary.config.preset == Preset::kFull ? &primary : comparison;
  const SimResult* noant = primary.config.preset == Preset::kNoAnticipation ? &primary : comparison;
  if (noant && !noant->trace.empty()) save(detail::ImageChart(*noant), "image_no_anticipation.svg");
  if (full && !full->trace.empty()) save(detail::ImageChart(*full), "image_full.svg");

  LineChart energy("Prediction error, first 10 s", "t [s]", "V");
  energy.Add(detail::Extract(tr, "V", "#2ca02c", [](const TraceRecord& r) { return r.V; }, false,
                             tr.front().t + 10.0));
  save(energy, "prediction_error.svg");

  LineChart events("Ball v2 and detected boundaries", "t [s]", "v2 [m]");
  Series v2{"v2", {}, {}, "#9467bd", false};
  for (std::size_t i = 0; i < tr.size(); ++i) {
    v2.x.push_back(tr[i].t);
    v2.y.push_back(primary.ball_position[i][1]);
  }
  events.Add(std::move(v2));
  for (const auto& e : primary.events) events.Mark({e.time, "event"});
  save(events, "events.svg");
  return written;
}

}  // namespace antsync
