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

#include "fbcheck/timing_ops.hpp"

#include <algorithm>

namespace fbcheck {

namespace {

void require_sample(const SampleSchedule& schedule, SampleIndex ne) {
  if (ne < 0 || ne >= schedule.size()) {
    throw DomainError(DomainError::Kind::OutOfRange,
                      "sample index " + std::to_string(ne) + " outside 0.." +
                          std::to_string(schedule.size() - 1));
  }
}

void require_covers(const Trajectory<bool>& p, const SampleSchedule& schedule) {
  if (p.horizon() < schedule.samples().back()) {
    throw DomainError(DomainError::Kind::OutOfRange,
                      "trajectory does not reach the last sample");
  }
}

// Earliest sample n0 such that p holds at every sample in [n0, ne]; requires p
// to hold at sample ne.
SampleIndex run_start(const Trajectory<bool>& p, const SampleSchedule& schedule,
                      SampleIndex ne) {
  SampleIndex n0 = ne;
  while (n0 > 0 && p[schedule[n0 - 1]]) --n0;
  return n0;
}

}  // namespace

std::string to_string(HeldForVerdict verdict) {
  switch (verdict) {
    case HeldForVerdict::MustHold:
      return "MustHold";
    case HeldForVerdict::MustNotHold:
      return "MustNotHold";
    case HeldForVerdict::Free:
      return "Free";
  }
  return "?";
}

bool held_for_exact(const Trajectory<bool>& p, Duration d, const TickDomain& domain, Tick t) {
  if (t < 0 || t > p.horizon()) {
    throw DomainError(DomainError::Kind::OutOfRange, "tick outside trajectory");
  }
  if (!p[t]) return false;
  Tick tj = t;
  while (tj > 0 && p[tj - 1]) --tj;
  return domain.time_of(t - tj) >= d.value;
}

HeldForVerdict held_for_envelope(const Trajectory<bool>& p, Duration d, Duration dl,
                                 Duration dr, const TickDomain& domain, Tick t) {
  if (dl > d) {
    throw DomainError(DomainError::Kind::BadArgument,
                      "left tolerance exceeds the nominal duration");
  }
  if (held_for_exact(p, d + dr, domain, t)) return HeldForVerdict::MustHold;
  if (!held_for_exact(p, d - dl, domain, t)) return HeldForVerdict::MustNotHold;
  return HeldForVerdict::Free;
}

bool held_for_s(const Trajectory<bool>& p, Duration d, const SampleSchedule& schedule,
                SampleIndex ne) {
  require_sample(schedule, ne);
  require_covers(p, schedule);
  if (!p[schedule[ne]]) return false;
  return schedule.span(run_start(p, schedule, ne), ne) >= d;
}

bool held_for_i(const Trajectory<bool>& p, Duration d, const SampleSchedule& schedule, Tick t) {
  return held_for_s(p, d, schedule, left_sample(schedule, t));
}

Duration timer_s(const Trajectory<bool>& p, const SampleSchedule& schedule, Duration timeout,
                 SampleIndex ne) {
  require_sample(schedule, ne);
  require_covers(p, schedule);
  Duration elapsed(0);
  for (SampleIndex n = 1; n <= ne; ++n) {
    if (!p[schedule[n]] || !p[schedule[n - 1]]) {
      elapsed = Duration(0);
    } else {
      elapsed = std::min(timeout, elapsed + schedule.span(n - 1, n));
    }
  }
  return elapsed;
}

Duration timer_i(const Trajectory<bool>& p, const SampleSchedule& schedule, Duration timeout,
                 Tick t) {
  return timer_s(p, schedule, timeout, left_sample(schedule, t));
}

std::vector<bool> held_for_s_values(const Trajectory<bool>& p, Duration d,
                                    const SampleSchedule& schedule) {
  require_covers(p, schedule);
  std::vector<bool> out(static_cast<std::size_t>(schedule.size()));
  SampleIndex n0 = 0;
  for (SampleIndex n = 0; n < schedule.size(); ++n) {
    if (!p[schedule[n]]) {
      n0 = n + 1;
      continue;
    }
    out[static_cast<std::size_t>(n)] = schedule.span(n0, n) >= d;
  }
  return out;
}

std::vector<Duration> timer_s_values(const Trajectory<bool>& p, const SampleSchedule& schedule,
                                     Duration timeout) {
  require_covers(p, schedule);
  std::vector<Duration> out(static_cast<std::size_t>(schedule.size()));
  for (SampleIndex n = 1; n < schedule.size(); ++n) {
    if (p[schedule[n]] && p[schedule[n - 1]]) {
      out[static_cast<std::size_t>(n)] =
          std::min(timeout, out[static_cast<std::size_t>(n) - 1] + schedule.span(n - 1, n));
    }
  }
  return out;
}

namespace {

template <class T>
Trajectory<T> hold_between_samples(const std::vector<T>& at_samples,
                                   const SampleSchedule& schedule, Tick horizon, T before) {
  std::vector<T> values(static_cast<std::size_t>(horizon) + 1, before);
  for (SampleIndex n = 0; n < schedule.size(); ++n) {
    const Tick from = schedule[n];
    const Tick to = n + 1 < schedule.size() ? schedule[n + 1] : horizon + 1;
    for (Tick t = from; t < to && t <= horizon; ++t) {
      values[static_cast<std::size_t>(t)] = at_samples[static_cast<std::size_t>(n)];
    }
  }
  return Trajectory<T>(std::move(values));
}

}  // namespace

Trajectory<bool> held_for_i_trace(const Trajectory<bool>& p, Duration d,
                                  const SampleSchedule& schedule) {
  return hold_between_samples(held_for_s_values(p, d, schedule), schedule, p.horizon(), false);
}

Trajectory<Duration> timer_i_trace(const Trajectory<bool>& p, const SampleSchedule& schedule,
                                   Duration timeout) {
  return hold_between_samples(timer_s_values(p, schedule, timeout), schedule, p.horizon(),
                              Duration(0));
}

namespace {

// Every schedule with gaps in [min_gap, max_gap] ticks that leaves no room for
// another sample before the horizon.
std::vector<std::vector<Tick>> covering_schedules(Tick horizon, Tick min_gap, Tick max_gap) {
  std::vector<std::vector<Tick>> out;
  std::vector<Tick> current{0};
  auto recurse = [&](auto&& self) -> void {
    const Tick last = current.back();
    // The tail after the last sample must be shorter than tmax.
    if (last + max_gap > horizon) out.push_back(current);
    for (Tick gap = min_gap; gap <= max_gap && last + gap <= horizon; ++gap) {
      current.push_back(last + gap);
      self(self);
      current.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

}  // namespace

RefinementResult refinement_experiment(const RefinementCase& params) {
  RefinementResult result;
  result.params = params;
  const TickDomain domain(params.delta, params.horizon);
  const Tick min_gap = static_cast<Tick>(domain.to_ticks(params.tmin));
  const Tick max_gap = static_cast<Tick>(domain.to_ticks(params.tmax));
  const Duration deterministic_d = params.d - params.dl;

  std::vector<SampleSchedule> schedules;
  for (auto& samples : covering_schedules(params.horizon, min_gap, max_gap)) {
    schedules.emplace_back(domain, std::move(samples), params.tmin, params.tmax);
  }
  result.schedules_checked = schedules.size();

  const std::uint64_t count = std::uint64_t{1} << (params.horizon + 1);
  for (const auto& schedule : schedules) {
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      auto p = Trajectory<bool>::generate(params.horizon,
                                          [&](Tick t) { return ((bits >> t) & 1U) != 0; });
      if (!is_filtered(p, schedule)) continue;
      ++result.inputs_checked;
      auto det = held_for_i_trace(p, deterministic_d, schedule);
      for (Tick t = 0; t <= params.horizon; ++t) {
        const auto verdict = held_for_envelope(p, params.d, params.dl, params.dr, domain, t);
        const bool bad = (verdict == HeldForVerdict::MustHold && !det[t]) ||
                         (verdict == HeldForVerdict::MustNotHold && det[t]);
        if (!bad) continue;
        ++result.violations;
        if (!result.first_violation) {
          result.first_violation =
              RefinementWitness{p.values(), schedule.samples(), t, verdict, det[t]};
        }
        break;
      }
    }
  }
  return result;
}

std::vector<RefinementResult> refinement_survey(std::int64_t delta, Tick max_gap,
                                                Tick max_tolerance, Tick d_ticks,
                                                Tick horizon) {
  std::vector<RefinementResult> out;
  for (Tick tmin = 1; tmin <= max_gap; ++tmin) {
    for (Tick tmax = tmin; tmax <= max_gap; ++tmax) {
      for (Tick dl = 0; dl <= std::min(max_tolerance, d_ticks); ++dl) {
        for (Tick dr = 0; dr <= max_tolerance; ++dr) {
          RefinementCase params;
          params.delta = delta;
          params.tmin = Duration(tmin * delta);
          params.tmax = Duration(tmax * delta);
          params.d = Duration(d_ticks * delta);
          params.dl = Duration(dl * delta);
          params.dr = Duration(dr * delta);
          params.horizon = horizon;
          out.push_back(refinement_experiment(params));
        }
      }
    }
  }
  return out;
}

}  // namespace fbcheck
