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

// Online event-boundary detection from a stream of prediction-error values.
// Each sample is z-scored against a sliding window of the previous samples;
// a boundary is declared when the score leaves [-b_event, b_event].

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace antsync {

/// Sliding window of the W most recent values with running mean and
/// population variance.
///
/// Welford add/remove keeps the update O(1). Removing large samples from a
/// window of tiny ones cancels catastrophically, so the moments are
/// recomputed from the buffer every W pushes and whenever M2 has fallen by
/// more than 2^10 from its peak since the last recompute.
class WindowStats {
 public:
  explicit WindowStats(std::size_t capacity) : buffer_(capacity) {
    if (capacity == 0) throw std::invalid_argument("window capacity must be positive");
  }

  std::size_t capacity() const noexcept { return buffer_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool full() const noexcept { return count_ == buffer_.size(); }

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return std::max(m2_, 0.0) / Denominator(); }
  double stddev() const noexcept { return std::sqrt(variance()); }

  void Push(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("window sample must be finite");
    if (full()) {
      const double old = buffer_[head_];
      buffer_[head_] = value;
      head_ = (head_ + 1) % buffer_.size();
      // Replace old by value: n stays the same.
      const double n = static_cast<double>(count_);
      const double old_mean = mean_;
      mean_ += (value - old) / n;
      m2_ += (value - old) * (value - mean_ + old - old_mean);
    } else {
      buffer_[(head_ + count_) % buffer_.size()] = value;
      ++count_;
      const double delta = value - mean_;
      mean_ += delta / static_cast<double>(count_);
      m2_ += delta * (value - mean_);
    }
    peak_m2_ = std::max(peak_m2_, m2_);
    peak_abs_mean_ = std::max(peak_abs_mean_, std::abs(mean_));
    ++since_recompute_;
    if (since_recompute_ >= buffer_.size() || m2_ < peak_m2_ * kCancellationRatio ||
        std::abs(mean_) < peak_abs_mean_ * kCancellationRatio) {
      Recompute();
    }
  }

  /// Exact two-pass moments over the current contents.
  struct Moments {
    double mean = 0.0;
    double variance = 0.0;
  };
  Moments Exact() const {
    Moments m;
    if (count_ == 0) return m;
    double sum = 0.0;
    ForEach([&](double v) { sum += v; });
    m.mean = sum / static_cast<double>(count_);
    double ss = 0.0;
    ForEach([&](double v) { ss += (v - m.mean) * (v - m.mean); });
    m.variance = ss / static_cast<double>(count_);
    return m;
  }

  /// Contents oldest first.
  std::vector<double> Values() const {
    std::vector<double> out;
    out.reserve(count_);
    ForEach([&](double v) { out.push_back(v); });
    return out;
  }

 private:
  static constexpr double kCancellationRatio = 1.0 / 1024.0;

  double Denominator() const noexcept { return count_ == 0 ? 1.0 : static_cast<double>(count_); }

  template <class Fn>
  void ForEach(Fn&& fn) const {
    for (std::size_t i = 0; i < count_; ++i) fn(buffer_[(head_ + i) % buffer_.size()]);
  }

  void Recompute() {
    const Moments m = Exact();
    mean_ = m.mean;
    m2_ = m.variance * static_cast<double>(count_);
    peak_m2_ = m2_;
    peak_abs_mean_ = std::abs(mean_);
    since_recompute_ = 0;
  }

  std::vector<double> buffer_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double peak_m2_ = 0.0;
  double peak_abs_mean_ = 0.0;
  std::size_t since_recompute_ = 0;
};

struct DetectorConfig {
  double b_event = 3.0;
  double refractory = 2.0;  // seconds
  double sigma_floor = 1e-12;

  void Validate() const {
    if (!(b_event > 0.0)) throw std::invalid_argument("b_event must be > 0");
    if (!(refractory >= 0.0)) throw std::invalid_argument("refractory must be >= 0");
    if (!(sigma_floor > 0.0)) throw std::invalid_argument("sigma_floor must be > 0");
  }
};

struct EventBoundary {
  double time = 0.0;
  double b_value = 0.0;
  double V_value = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
};

/// (V - mu) / max(sigma, sigma_floor).
inline double BMetric(double V, double mu, double sigma, double sigma_floor) {
  return (V - mu) / std::max(sigma, sigma_floor);
}

/// True iff the window is warm, |b| exceeds the threshold and the last
/// boundary (if any) is at least `refractory` seconds old.
inline bool ShouldDetect(double b, double t, const DetectorConfig& cfg,
                         std::optional<double> last_event, bool warm) {
  if (!warm || !(std::abs(b) > cfg.b_event)) return false;
  return !last_event || t - *last_event >= cfg.refractory;
}

inline std::optional<EventBoundary> Detect(double b, double t, const DetectorConfig& cfg,
                                           std::optional<double> last_event, bool warm) {
  if (!ShouldDetect(b, t, cfg, last_event, warm)) return std::nullopt;
  return EventBoundary{t, b, 0.0, 0.0, 0.0};
}

/// Streaming detector: compares each V against the window of previous
/// values, then adds it to the window.
class EventDetector {
 public:
  struct Sample {
    double b = 0.0;  // 0 until the window is warm
    std::optional<EventBoundary> event;
  };

  EventDetector(std::size_t window, DetectorConfig cfg) : window_(window), cfg_(cfg) {
    cfg_.Validate();
  }

  const WindowStats& window() const noexcept { return window_; }
  const DetectorConfig& config() const noexcept { return cfg_; }
  const std::vector<EventBoundary>& events() const noexcept { return events_; }

  Sample Push(double V, double t) {
    if (!(V >= 0.0) || !std::isfinite(V)) {
      throw std::invalid_argument("prediction error must be finite and >= 0");
    }
    Sample out;
    const bool warm = window_.full();
    if (warm) {
      const double mu = window_.mean();
      const double sigma = window_.stddev();
      out.b = BMetric(V, mu, sigma, cfg_.sigma_floor);
      if (ShouldDetect(out.b, t, cfg_, last_event(), warm)) {
        out.event = EventBoundary{t, out.b, V, mu, sigma};
        events_.push_back(*out.event);
      }
    }
    window_.Push(V);
    return out;
  }

 private:
  std::optional<double> last_event() const {
    if (events_.empty()) return std::nullopt;
    return events_.back().time;
  }

  WindowStats window_;
  DetectorConfig cfg_;
  std::vector<EventBoundary> events_;
};

}  // namespace antsync
