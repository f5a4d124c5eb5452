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

// Sustained-timing operators: tick-level Held_For with tolerances, the sampled
// Held_For_S / Held_For_I, and the saturating Timer_S / Timer_I counters.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbcheck/time_core.hpp"

namespace fbcheck {

enum class HeldForVerdict { MustHold, MustNotHold, Free };

std::string to_string(HeldForVerdict verdict);

/// True iff some tick tj <= t has (t - tj) * delta >= d with `p` true on [tj, t].
bool held_for_exact(const Trajectory<bool>& p, Duration d, const TickDomain& domain, Tick t);

/// Classifies tick `t` against the envelope [d - dl, d + dr]: an implementation
/// must fire on MustHold, must stay quiet on MustNotHold and is free otherwise.
/// Throws DomainError when dl > d.
HeldForVerdict held_for_envelope(const Trajectory<bool>& p, Duration d, Duration dl,
                                 Duration dr, const TickDomain& domain, Tick t);

bool held_for_s(const Trajectory<bool>& p, Duration d, const SampleSchedule& schedule,
                SampleIndex ne);
bool held_for_i(const Trajectory<bool>& p, Duration d, const SampleSchedule& schedule, Tick t);

Duration timer_s(const Trajectory<bool>& p, const SampleSchedule& schedule, Duration timeout,
                 SampleIndex ne);
Duration timer_i(const Trajectory<bool>& p, const SampleSchedule& schedule, Duration timeout,
                 Tick t);

// Whole-horizon forms. Per-sample vectors are indexed by sample index, the
// trajectories by tick. Ticks before the first sample read as false / zero.
std::vector<bool> held_for_s_values(const Trajectory<bool>& p, Duration d,
                                    const SampleSchedule& schedule);
std::vector<Duration> timer_s_values(const Trajectory<bool>& p, const SampleSchedule& schedule,
                                     Duration timeout);
Trajectory<bool> held_for_i_trace(const Trajectory<bool>& p, Duration d,
                                  const SampleSchedule& schedule);
Trajectory<Duration> timer_i_trace(const Trajectory<bool>& p, const SampleSchedule& schedule,
                                   Duration timeout);

/// Parameters of one refinement experiment: does the deterministic
/// held_for_i(p, d - dl) stay inside the Held_For(d, dl, dr) envelope for
/// every filtered input and every admissible schedule?
struct RefinementCase {
  std::int64_t delta = 1;
  Duration tmin{1};
  Duration tmax{1};
  Duration d{1};
  Duration dl{0};
  Duration dr{0};
  Tick horizon = 8;
};

struct RefinementWitness {
  std::vector<bool> p;
  std::vector<Tick> samples;
  Tick tick = 0;
  HeldForVerdict envelope = HeldForVerdict::Free;
  bool deterministic = false;
};

struct RefinementResult {
  RefinementCase params;
  std::uint64_t inputs_checked = 0;
  std::uint64_t schedules_checked = 0;
  std::uint64_t violations = 0;
  std::optional<RefinementWitness> first_violation;
  bool holds() const { return violations == 0; }
};

RefinementResult refinement_experiment(const RefinementCase& params);

/// Runs the experiment over a grid: tmin, tmax, dl and dr from {0..max_tolerance}
/// ticks (tmin >= 1), with d fixed.
std::vector<RefinementResult> refinement_survey(std::int64_t delta, Tick max_gap,
                                                Tick max_tolerance, Tick d_ticks,
                                                Tick horizon);

}  // namespace fbcheck
