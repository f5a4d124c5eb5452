// Copyright 2026 The fbcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Discrete physical time: ticks, durations, trajectories and sample schedules.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fbcheck {

using Tick = int;
using SampleIndex = int;

class DomainError : public std::logic_error {
 public:
  enum class Kind {
    NotInit,      // pre() applied to tick 0
    PastHorizon,  // next() applied to the last modeled tick
    OutOfRange,
    Misaligned,   // a duration that is not a multiple of delta
    BadSchedule,
    BadArgument,
  };

  DomainError(Kind kind, const std::string& what)
      : std::logic_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A non-negative span of physical time, in the same units as delta.
struct Duration {
  std::int64_t value = 0;

  constexpr Duration() = default;
  constexpr explicit Duration(std::int64_t v) : value(v) {}

  constexpr auto operator<=>(const Duration&) const = default;

  friend constexpr Duration operator+(Duration a, Duration b) {
    return Duration(a.value + b.value);
  }
  friend Duration operator-(Duration a, Duration b) {
    if (b.value > a.value) {
      throw DomainError(DomainError::Kind::BadArgument,
                        "negative duration " + std::to_string(a.value) + " - " +
                            std::to_string(b.value));
    }
    return Duration(a.value - b.value);
  }
};

/// Ticks 0..horizon, each `delta` physical units apart.
class TickDomain {
 public:
  TickDomain(std::int64_t delta, Tick horizon);

  std::int64_t delta() const { return delta_; }
  Tick horizon() const { return horizon_; }
  bool contains(Tick t) const { return t >= 0 && t <= horizon_; }

  std::int64_t time_of(Tick t) const { return std::int64_t{t} * delta_; }
  Duration ticks(std::int64_t n) const { return Duration(n * delta_); }

  // Builds a duration, rejecting values that are not whole ticks.
  Duration duration(std::int64_t value) const;
  std::int64_t to_ticks(Duration d) const;
  bool aligned(Duration d) const { return d.value >= 0 && d.value % delta_ == 0; }

  TickDomain with_horizon(Tick horizon) const { return TickDomain(delta_, horizon); }

  bool operator==(const TickDomain&) const = default;

 private:
  std::int64_t delta_;
  Tick horizon_;
};

struct TickNav {
  bool init = false;
  std::optional<Tick> pre;
  std::optional<Tick> next;
  Tick rank = 0;
};

inline bool is_init(Tick t) { return t == 0; }
Tick pre(const TickDomain& domain, Tick t);
Tick next(const TickDomain& domain, Tick t);
Tick rank(const TickDomain& domain, Tick t);
TickNav navigate(const TickDomain& domain, Tick t);

/// A total, immutable map from ticks 0..horizon to values.
template <class T>
class Trajectory {
 public:
  using value_type = T;

  Trajectory() : values_(1, T{}) {}
  explicit Trajectory(std::vector<T> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw DomainError(DomainError::Kind::BadArgument, "empty trajectory");
    }
  }

  static Trajectory constant(Tick horizon, T value) {
    return Trajectory(std::vector<T>(static_cast<std::size_t>(horizon) + 1, value));
  }

  /// Piecewise-constant trajectory from (tick, value) change points; the
  /// first change point must be at tick 0.
  static Trajectory from_changes(Tick horizon, std::span<const std::pair<Tick, T>> changes) {
    if (changes.empty() || changes.front().first != 0) {
      throw DomainError(DomainError::Kind::BadArgument,
                        "change list must start at tick 0");
    }
    std::vector<T> values(static_cast<std::size_t>(horizon) + 1);
    std::size_t next_change = 0;
    T current = changes.front().second;
    for (Tick t = 0; t <= horizon; ++t) {
      while (next_change < changes.size() && changes[next_change].first == t) {
        current = changes[next_change].second;
        ++next_change;
      }
      if (next_change < changes.size() && changes[next_change].first < t) {
        throw DomainError(DomainError::Kind::BadArgument,
                          "change points must be strictly increasing");
      }
      values[static_cast<std::size_t>(t)] = current;
    }
    if (next_change != changes.size()) {
      throw DomainError(DomainError::Kind::OutOfRange, "change point beyond horizon");
    }
    return Trajectory(std::move(values));
  }

  template <class F>
  static Trajectory generate(Tick horizon, F&& f) {
    std::vector<T> values;
    values.reserve(static_cast<std::size_t>(horizon) + 1);
    for (Tick t = 0; t <= horizon; ++t) values.push_back(static_cast<T>(f(t)));
    return Trajectory(std::move(values));
  }

  Tick horizon() const { return static_cast<Tick>(values_.size()) - 1; }

  T operator[](Tick t) const { return values_[static_cast<std::size_t>(t)]; }

  T at(Tick t) const {
    if (t < 0 || t > horizon()) {
      throw DomainError(DomainError::Kind::OutOfRange,
                        "tick " + std::to_string(t) + " outside trajectory horizon " +
                            std::to_string(horizon()));
    }
    return (*this)[t];
  }

  const std::vector<T>& values() const { return values_; }

  Trajectory truncated(Tick horizon) const {
    return Trajectory(std::vector<T>(values_.begin(), values_.begin() + horizon + 1));
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<T>()))>;
    std::vector<U> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(f(v));
    return Trajectory<U>(std::move(out));
  }

  bool operator==(const Trajectory&) const = default;

 private:
  std::vector<T> values_;
};

struct ScheduleOptions {
  // When false, the first sample only has to fall within Tmax of tick 0.
  bool require_zero_start = true;

  bool operator==(const ScheduleOptions&) const = default;
};

/// Strictly increasing sample ticks whose physical gaps lie in [tmin, tmax].
class SampleSchedule {
 public:
  SampleSchedule(const TickDomain& domain, std::vector<Tick> samples, Duration tmin,
                 Duration tmax, ScheduleOptions options = {});

  static SampleSchedule every_tick(const TickDomain& domain);
  static SampleSchedule periodic(const TickDomain& domain, Tick gap);
  static SampleSchedule from_gaps(const TickDomain& domain, std::span<const Tick> gaps,
                                  Duration tmin, Duration tmax);

  const TickDomain& domain() const { return domain_; }
  std::int64_t delta() const { return domain_.delta(); }
  Tick horizon() const { return domain_.horizon(); }
  const std::vector<Tick>& samples() const { return samples_; }
  SampleIndex size() const { return static_cast<SampleIndex>(samples_.size()); }
  Tick operator[](SampleIndex n) const { return samples_[static_cast<std::size_t>(n)]; }
  Duration tmin() const { return tmin_; }
  Duration tmax() const { return tmax_; }
  Tick tmax_ticks() const { return static_cast<Tick>(tmax_.value / domain_.delta()); }
  bool is_sample(Tick t) const;
  const ScheduleOptions& options() const { return options_; }

  // Physical time between samples n0 and n1.
  Duration span(SampleIndex n0, SampleIndex n1) const {
    return Duration(domain_.time_of((*this)[n1] - (*this)[n0]));
  }

  /// Same schedule restricted to ticks 0..horizon.
  SampleSchedule truncated(Tick horizon) const;

  bool operator==(const SampleSchedule&) const = default;

 private:
  TickDomain domain_;
  std::vector<Tick> samples_;
  Duration tmin_;
  Duration tmax_;
  ScheduleOptions options_;
};

/// Largest n with samples[n] <= t.
SampleIndex left_sample(const SampleSchedule& schedule, Tick t);

/// All schedules with `sample_count` samples whose gaps (in ticks) are drawn
/// from `gap_choices`. The horizon of each is its last sample plus `tail`.
std::vector<SampleSchedule> enumerate_schedules(std::int64_t delta, int sample_count,
                                                std::span<const Tick> gap_choices,
                                                Duration tmin, Duration tmax, Tick tail = 0);

struct FilterVerdict {
  bool filtered = true;
  std::optional<Tick> witness;
  explicit operator bool() const { return filtered; }
};

/// True iff every change of `p` persists for Tmax ticks and `p` keeps its
/// initial value up to tick Tmax. On failure the witness is the earliest tick
/// carrying a value that did not persist (or that broke the initial hold).
template <class T>
FilterVerdict is_filtered(const Trajectory<T>& p, const SampleSchedule& schedule) {
  const Tick horizon = p.horizon();
  const Tick window = schedule.tmax_ticks();
  // A break of the initial hold is always the first change point, so it is
  // never later than a persistence violation.
  for (Tick t = 1; t <= std::min(window, horizon); ++t) {
    if (p[t] != p[0]) return FilterVerdict{false, t};
  }
  for (Tick t0 = 0; t0 < horizon; ++t0) {
    if (p[t0] == p[t0 + 1]) continue;
    const Tick last = std::min(horizon, t0 + window);
    for (Tick t = t0 + 1; t <= last; ++t) {
      if (p[t] != p[t0 + 1]) return FilterVerdict{false, t0 + 1};
    }
  }
  return {};
}

}  // namespace fbcheck
