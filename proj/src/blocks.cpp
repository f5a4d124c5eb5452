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

#include "fbcheck/blocks.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fbcheck/timing_ops.hpp"

namespace fbcheck {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Not:
      return "NOT";
    case GateKind::Conj:
      return "CONJ";
    case GateKind::Disj:
      return "DISJ";
  }
  return "?";
}

int arity(GateKind kind) { return kind == GateKind::Not ? 1 : 2; }

bool eval_gate(GateKind kind, std::span<const bool> inputs) {
  if (static_cast<int>(inputs.size()) != arity(kind)) {
    throw std::invalid_argument(to_string(kind) + " expects " + std::to_string(arity(kind)) +
                                " input(s), got " + std::to_string(inputs.size()));
  }
  switch (kind) {
    case GateKind::Not:
      return !inputs[0];
    case GateKind::Conj:
      return inputs[0] && inputs[1];
    case GateKind::Disj:
      return inputs[0] || inputs[1];
  }
  return false;
}

bool eval_gate(GateKind kind, std::initializer_list<bool> inputs) {
  return eval_gate(kind, std::span<const bool>(inputs.begin(), inputs.size()));
}

Trajectory<bool> init_signal(Tick horizon) {
  return Trajectory<bool>::generate(horizon, [](Tick t) { return is_init(t); });
}

std::string to_string(EtRule rule) {
  return rule == EtRule::SaturatedFirst ? "saturated-first" : "in-conjoined";
}

EtRule parse_et_rule(std::string_view text) {
  if (text == "saturated-first") return EtRule::SaturatedFirst;
  if (text == "in-conjoined") return EtRule::InConjoined;
  throw std::invalid_argument("unknown ET rule '" + std::string(text) + "'");
}

namespace {

Duration elapsed_output(EtRule rule, bool in, Duration d, Duration pt) {
  if (rule == EtRule::InConjoined && !in) return Duration(0);
  if (d >= pt) return pt;
  return in ? d : Duration(0);
}

}  // namespace

TimerOutputs ton(const Trajectory<bool>& in, Duration pt, const SampleSchedule& schedule,
                 EtRule rule) {
  const auto d = timer_i_trace(in, schedule, pt);
  return {
      Trajectory<bool>::generate(in.horizon(), [&](Tick t) { return d[t] >= pt; }),
      Trajectory<Duration>::generate(
          in.horizon(), [&](Tick t) { return elapsed_output(rule, in[t], d[t], pt); }),
  };
}

TimerOutputs ton_ideal(const Trajectory<bool>& in, Duration pt, const TickDomain& domain) {
  std::vector<bool> q(in.values().size());
  std::vector<Duration> et(in.values().size());
  Tick last_enabled = 0;
  for (Tick t = 0; t <= in.horizon(); ++t) {
    const bool prev_in = t > 0 && in[t - 1];
    if (!prev_in && in[t]) last_enabled = t;
    if (!in[t]) continue;
    const Duration d(domain.time_of(t - last_enabled));
    q[static_cast<std::size_t>(t)] = d >= pt;
    et[static_cast<std::size_t>(t)] = d >= pt ? pt : d;
  }
  return {Trajectory<bool>(std::move(q)), Trajectory<Duration>(std::move(et))};
}

TimerOutputs tof_tp(PulseTimerKind kind, const Trajectory<bool>& in, Duration pt,
                    const SampleSchedule& schedule) {
  std::vector<bool> q(in.values().size());
  std::vector<Duration> et(in.values().size());
  if (kind == PulseTimerKind::Tof) {
    // The off-delay counter runs on "IN is off, and was on at some earlier sample".
    bool ever_on = false;
    std::vector<bool> armed(in.values().size());
    for (Tick t = 0; t <= in.horizon(); ++t) {
      if (schedule.is_sample(t) && in[t]) ever_on = true;
      armed[static_cast<std::size_t>(t)] = !in[t] && ever_on;
    }
    const Trajectory<bool> armed_traj(std::move(armed));
    const auto d = timer_i_trace(armed_traj, schedule, pt);
    for (Tick t = 0; t <= in.horizon(); ++t) {
      if (t < schedule[0]) continue;
      const Tick s = schedule[left_sample(schedule, t)];
      const bool on = in[s];
      const bool off_armed = armed_traj[s];
      q[static_cast<std::size_t>(t)] = on || (off_armed && d[t] < pt);
      et[static_cast<std::size_t>(t)] = off_armed ? d[t] : Duration(0);
    }
  } else {
    PulseTimer timer(pt);
    for (Tick t = 0; t <= in.horizon(); ++t) {
      const auto r = timer.step(t, schedule.is_sample(t), in[t], schedule.delta());
      q[static_cast<std::size_t>(t)] = r.q;
      et[static_cast<std::size_t>(t)] = r.et;
    }
  }
  return {Trajectory<bool>(std::move(q)), Trajectory<Duration>(std::move(et))};
}

TimerReading OnDelayTimer::step(Tick t, bool is_sample, bool in, std::int64_t delta) {
  if (is_sample) {
    if (!prev_sample_ || !in || !prev_in_) {
      elapsed_ = Duration(0);
    } else {
      elapsed_ = std::min(pt_, elapsed_ + Duration((t - *prev_sample_) * delta));
    }
    prev_sample_ = t;
    prev_in_ = in;
  }
  return {elapsed_ >= pt_, elapsed_output(rule_, in, elapsed_, pt_)};
}

TimerReading OffDelayTimer::step(Tick t, bool is_sample, bool in, std::int64_t delta) {
  if (!is_sample) return held_;
  if (in) ever_on_ = true;
  const bool armed = !in && ever_on_;
  if (!prev_sample_ || !armed || !prev_armed_) {
    elapsed_ = Duration(0);
  } else {
    elapsed_ = std::min(pt_, elapsed_ + Duration((t - *prev_sample_) * delta));
  }
  prev_sample_ = t;
  prev_armed_ = armed;
  held_ = {in || (armed && elapsed_ < pt_), armed ? elapsed_ : Duration(0)};
  return held_;
}

TimerReading PulseTimer::step(Tick t, bool is_sample, bool in, std::int64_t delta) {
  if (!is_sample) return held_;
  const bool rising = in && (!seen_sample_ || !prev_in_);
  seen_sample_ = true;
  prev_in_ = in;
  if (start_ && Duration((t - *start_) * delta) >= pt_ && !in) start_.reset();
  if (!start_ && rising) start_ = t;
  if (!start_) {
    held_ = {};
    return held_;
  }
  const Duration elapsed((t - *start_) * delta);
  held_ = {elapsed < pt_, std::min(elapsed, pt_)};
  return held_;
}

}  // namespace fbcheck
