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

#include "fbcheck/time_core.hpp"

#include <algorithm>

namespace fbcheck {

namespace {

[[noreturn]] void fail(DomainError::Kind kind, const std::string& what) {
  throw DomainError(kind, what);
}

void require_tick(const TickDomain& domain, Tick t) {
  if (!domain.contains(t)) {
    fail(DomainError::Kind::OutOfRange, "tick " + std::to_string(t) +
                                            " outside 0.." + std::to_string(domain.horizon()));
  }
}

}  // namespace

TickDomain::TickDomain(std::int64_t delta, Tick horizon) : delta_(delta), horizon_(horizon) {
  if (delta <= 0) fail(DomainError::Kind::BadArgument, "delta must be positive");
  if (horizon < 0) fail(DomainError::Kind::BadArgument, "horizon must be non-negative");
}

Duration TickDomain::duration(std::int64_t value) const {
  Duration d(value);
  if (value < 0) fail(DomainError::Kind::BadArgument, "negative duration");
  if (!aligned(d)) {
    fail(DomainError::Kind::Misaligned, "duration " + std::to_string(value) +
                                            " is not a multiple of delta " +
                                            std::to_string(delta_));
  }
  return d;
}

std::int64_t TickDomain::to_ticks(Duration d) const { return duration(d.value).value / delta_; }

Tick pre(const TickDomain& domain, Tick t) {
  require_tick(domain, t);
  if (is_init(t)) fail(DomainError::Kind::NotInit, "pre(0): not_init violated");
  return t - 1;
}

Tick next(const TickDomain& domain, Tick t) {
  require_tick(domain, t);
  if (t == domain.horizon()) {
    fail(DomainError::Kind::PastHorizon,
         "next(" + std::to_string(t) + "): tick is the end of the horizon");
  }
  return t + 1;
}

Tick rank(const TickDomain& domain, Tick t) {
  require_tick(domain, t);
  return t;
}

TickNav navigate(const TickDomain& domain, Tick t) {
  require_tick(domain, t);
  TickNav nav;
  nav.init = is_init(t);
  if (t > 0) nav.pre = t - 1;
  if (t < domain.horizon()) nav.next = t + 1;
  nav.rank = t;
  return nav;
}

SampleSchedule::SampleSchedule(const TickDomain& domain, std::vector<Tick> samples,
                               Duration tmin, Duration tmax, ScheduleOptions options)
    : domain_(domain),
      samples_(std::move(samples)),
      tmin_(tmin),
      tmax_(tmax),
      options_(options) {
  auto bad = [](const std::string& what) { fail(DomainError::Kind::BadSchedule, what); };
  if (!domain_.aligned(tmin_) || !domain_.aligned(tmax_)) {
    bad("tmin/tmax must be multiples of delta");
  }
  if (tmin_.value <= 0 || tmin_ > tmax_) bad("require 0 < tmin <= tmax");
  if (samples_.empty()) bad("schedule has no samples");
  if (options_.require_zero_start) {
    if (samples_.front() != 0) bad("first sample must be tick 0");
  } else if (samples_.front() < 0 || domain_.time_of(samples_.front()) > tmax_.value) {
    bad("first sample must lie within tmax of tick 0");
  }
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const Tick gap = samples_[i] - samples_[i - 1];
    if (gap <= 0) bad("samples must be strictly increasing");
    const std::int64_t physical = domain_.time_of(gap);
    if (physical < tmin_.value || physical > tmax_.value) {
      bad("gap " + std::to_string(physical) + " between samples " + std::to_string(i - 1) +
          " and " + std::to_string(i) + " outside [" + std::to_string(tmin_.value) + ", " +
          std::to_string(tmax_.value) + "]");
    }
  }
  if (samples_.back() > domain_.horizon()) bad("last sample beyond horizon");
}

SampleSchedule SampleSchedule::every_tick(const TickDomain& domain) {
  return periodic(domain, 1);
}

SampleSchedule SampleSchedule::periodic(const TickDomain& domain, Tick gap) {
  if (gap <= 0) fail(DomainError::Kind::BadSchedule, "period must be positive");
  std::vector<Tick> samples;
  for (Tick t = 0; t <= domain.horizon(); t += gap) samples.push_back(t);
  return SampleSchedule(domain, std::move(samples), domain.ticks(gap), domain.ticks(gap));
}

SampleSchedule SampleSchedule::from_gaps(const TickDomain& domain, std::span<const Tick> gaps,
                                         Duration tmin, Duration tmax) {
  std::vector<Tick> samples{0};
  for (Tick gap : gaps) samples.push_back(samples.back() + gap);
  return SampleSchedule(domain, std::move(samples), tmin, tmax);
}

bool SampleSchedule::is_sample(Tick t) const {
  return std::binary_search(samples_.begin(), samples_.end(), t);
}

SampleSchedule SampleSchedule::truncated(Tick horizon) const {
  std::vector<Tick> kept;
  for (Tick s : samples_) {
    if (s <= horizon) kept.push_back(s);
  }
  return SampleSchedule(domain_.with_horizon(horizon), std::move(kept), tmin_, tmax_, options_);
}

SampleIndex left_sample(const SampleSchedule& schedule, Tick t) {
  const auto& samples = schedule.samples();
  if (t < samples.front()) {
    fail(DomainError::Kind::OutOfRange,
         "tick " + std::to_string(t) + " precedes the first sample");
  }
  auto it = std::upper_bound(samples.begin(), samples.end(), t);
  return static_cast<SampleIndex>(it - samples.begin()) - 1;
}

std::vector<SampleSchedule> enumerate_schedules(std::int64_t delta, int sample_count,
                                                std::span<const Tick> gap_choices,
                                                Duration tmin, Duration tmax, Tick tail) {
  std::vector<SampleSchedule> out;
  if (sample_count <= 0) return out;
  std::vector<Tick> samples{0};
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(samples.size()) == sample_count) {
      TickDomain domain(delta, samples.back() + tail);
      out.emplace_back(domain, samples, tmin, tmax);
      return;
    }
    for (Tick gap : gap_choices) {
      samples.push_back(samples.back() + gap);
      self(self);
      samples.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

}  // namespace fbcheck
