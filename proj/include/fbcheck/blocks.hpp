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

// IEC 61131-3 basic blocks as single-tick transfer functions, plus the
// sampled, tolerance-aware timers (TON, and the experimental TOF / TP).

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>

#include "fbcheck/time_core.hpp"

namespace fbcheck {

enum class GateKind { Not, Conj, Disj };

std::string to_string(GateKind kind);
int arity(GateKind kind);

/// Throws std::invalid_argument on an arity mismatch.
bool eval_gate(GateKind kind, std::span<const bool> inputs);
bool eval_gate(GateKind kind, std::initializer_list<bool> inputs);

/// Reset-dominant latch.
inline bool rs_latch(bool set, bool reset, bool prev_q) {
  if (reset) return false;
  if (set) return true;
  return prev_q;
}

struct LatchState {
  bool q_init = false;
  bool q = false;

  explicit LatchState(bool init = false) : q_init(init), q(init) {}
  bool step(bool set, bool reset) { return q = rs_latch(set, reset, q); }
};

/// IEC SEL: g = false selects in0, g = true selects in1.
template <class T>
T sel(bool g, T in0, T in1) {
  return g ? in1 : in0;
}

/// True at tick 0 only.
Trajectory<bool> init_signal(Tick horizon);

// How the ET output treats a dropped IN while the frozen timer value is
// non-zero. SaturatedFirst: d >= PT -> PT; IN and d < PT -> d; otherwise 0.
// InConjoined: IN and d >= PT -> PT; IN and d < PT -> d; not IN -> 0.
enum class EtRule { SaturatedFirst, InConjoined };

std::string to_string(EtRule rule);
EtRule parse_et_rule(std::string_view text);

struct TimerOutputs {
  Trajectory<bool> q;
  Trajectory<Duration> et;
};

/// On-delay timer over a sample schedule. `pt` is the tolerance-adjusted
/// preset; d = timer_i(in, schedule, pt, t), q = d >= pt.
TimerOutputs ton(const Trajectory<bool>& in, Duration pt, const SampleSchedule& schedule,
                 EtRule rule = EtRule::SaturatedFirst);

/// Idealized on-delay timer that reacts on the tick of every rising edge.
TimerOutputs ton_ideal(const Trajectory<bool>& in, Duration pt, const TickDomain& domain);

enum class PulseTimerKind { Tof, Tp };

/// Off-delay and pulse timers. Outputs are computed at samples and held
/// until the next sample.
TimerOutputs tof_tp(PulseTimerKind kind, const Trajectory<bool>& in, Duration pt,
                    const SampleSchedule& schedule);

struct TimerReading {
  bool q = false;
  Duration et{0};
};

/// Streaming TON used by the netlist simulator: feed every tick in order.
class OnDelayTimer {
 public:
  OnDelayTimer(Duration pt, EtRule rule) : pt_(pt), rule_(rule) {}

  TimerReading step(Tick t, bool is_sample, bool in, std::int64_t delta);
  Duration elapsed() const { return elapsed_; }

 private:
  Duration pt_;
  EtRule rule_;
  Duration elapsed_{0};
  std::optional<Tick> prev_sample_;
  bool prev_in_ = false;
};

class OffDelayTimer {
 public:
  explicit OffDelayTimer(Duration pt) : pt_(pt) {}

  TimerReading step(Tick t, bool is_sample, bool in, std::int64_t delta);

 private:
  Duration pt_;
  Duration elapsed_{0};
  std::optional<Tick> prev_sample_;
  bool prev_armed_ = false;
  bool ever_on_ = false;
  TimerReading held_;
};

class PulseTimer {
 public:
  explicit PulseTimer(Duration pt) : pt_(pt) {}

  TimerReading step(Tick t, bool is_sample, bool in, std::int64_t delta);

 private:
  Duration pt_;
  std::optional<Tick> start_;
  bool prev_in_ = false;
  bool seen_sample_ = false;
  TimerReading held_;
};

}  // namespace fbcheck
