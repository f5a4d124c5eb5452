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

#include "fbcheck/simulate.hpp"

#include <algorithm>
#include <deque>

namespace fbcheck {

const Signal& SimTrace::wire(std::string_view name) const {
  auto it = wires.find(name);
  if (it == wires.end()) throw std::out_of_range("trace has no wire '" + std::string(name) + "'");
  return it->second;
}

const Signal& SimTrace::output(std::string_view port) const {
  auto it = output_wires.find(port);
  if (it == output_wires.end()) {
    throw std::out_of_range("trace has no output port '" + std::string(port) + "'");
  }
  return wire(it->second);
}

Simulator::Simulator(Netlist netlist) : netlist_(std::move(netlist)) {
  auto report = validate_netlist(netlist_);
  if (!report.ok()) throw InvalidNetlist(std::move(report));

  std::map<std::string, int, std::less<>> slot_of;  // "block.port" or input name
  for (const auto& in : netlist_.inputs) slot_of[in.name] = slot_count_++;
  blocks_.resize(netlist_.blocks.size());
  for (std::size_t b = 0; b < netlist_.blocks.size(); ++b) {
    const auto& block = netlist_.blocks[b];
    for (const auto& port : output_ports(block)) {
      blocks_[b].slots.push_back(slot_count_);
      slot_of[block.id + "." + port] = slot_count_++;
    }
  }

  std::map<std::string, int, std::less<>> wire_into;  // sink -> wire index
  for (std::size_t w = 0; w < netlist_.wires.size(); ++w) {
    const auto& wire = netlist_.wires[w];
    wires_.push_back({slot_of.at(wire.source.str()), wire.feedback, wire.init.value_or(0)});
    for (const auto& sink : wire.sinks) wire_into[sink.str()] = static_cast<int>(w);
  }
  for (std::size_t b = 0; b < netlist_.blocks.size(); ++b) {
    const auto& block = netlist_.blocks[b];
    for (const auto& port : input_ports(block)) {
      blocks_[b].inputs.push_back(wire_into.at(block.id + "." + port));
    }
  }

  // Kahn's algorithm over non-feedback edges; ties resolve by declaration order.
  std::map<std::string, int, std::less<>> index_of;
  for (std::size_t b = 0; b < netlist_.blocks.size(); ++b) {
    index_of[netlist_.blocks[b].id] = static_cast<int>(b);
  }
  std::vector<std::vector<int>> succ(netlist_.blocks.size());
  std::vector<int> indegree(netlist_.blocks.size(), 0);
  for (const auto& wire : netlist_.wires) {
    if (wire.feedback || wire.source.external()) continue;
    const int from = index_of.at(wire.source.block);
    for (const auto& sink : wire.sinks) {
      if (sink.external()) continue;
      const int to = index_of.at(sink.block);
      succ[static_cast<std::size_t>(from)].push_back(to);
      ++indegree[static_cast<std::size_t>(to)];
    }
  }
  std::vector<int> ready;
  for (std::size_t b = 0; b < indegree.size(); ++b) {
    if (indegree[b] == 0) ready.push_back(static_cast<int>(b));
  }
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    const int b = *it;
    ready.erase(it);
    order_.push_back(b);
    for (int next : succ[static_cast<std::size_t>(b)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push_back(next);
    }
  }
}

std::vector<detail::BlockState> Simulator::initial_states() const {
  std::vector<detail::BlockState> state(netlist_.blocks.size());
  for (std::size_t b = 0; b < netlist_.blocks.size(); ++b) {
    const auto& block = netlist_.blocks[b];
    switch (block.kind) {
      case BlockKind::Rs:
        state[b] = LatchState(block.q_init);
        break;
      case BlockKind::Ton:
        state[b] = OnDelayTimer(block.pt, block.et_rule);
        break;
      case BlockKind::Tof:
        state[b] = OffDelayTimer(block.pt);
        break;
      case BlockKind::Tp:
        state[b] = PulseTimer(block.pt);
        break;
      case BlockKind::Table:
        state[b] = detail::TableState{block.table_init};
        break;
      default:
        break;
    }
  }
  return state;
}

Value Simulator::read_wire(int wire, Tick t, const std::vector<Value>& slots,
                           const std::vector<Value>& prev_slots,
                           const std::vector<std::optional<Value>>* forced) const {
  const auto& w = wires_[static_cast<std::size_t>(wire)];
  if (!w.feedback) return slots[static_cast<std::size_t>(w.slot)];
  if (forced && (*forced)[static_cast<std::size_t>(wire)]) {
    return *(*forced)[static_cast<std::size_t>(wire)];
  }
  return t == 0 ? w.init : prev_slots[static_cast<std::size_t>(w.slot)];
}

void Simulator::eval_tick(Tick t, const SampleSchedule& schedule,
                          const std::vector<Value>& external,
                          const std::vector<Value>& prev_slots, std::vector<Value>& slots,
                          std::vector<detail::BlockState>& state,
                          const std::vector<std::optional<Value>>* forced) const {
  std::copy(external.begin(), external.end(), slots.begin());
  const bool sample = schedule.is_sample(t);
  const std::int64_t delta = schedule.delta();
  Value in[8];
  std::vector<Value> table_in;
  for (int b : order_) {
    const auto& block = netlist_.blocks[static_cast<std::size_t>(b)];
    const auto& compiled = blocks_[static_cast<std::size_t>(b)];
    const auto n_in = compiled.inputs.size();
    if (block.kind == BlockKind::Table) table_in.resize(n_in);
    for (std::size_t i = 0; i < n_in; ++i) {
      const Value v = read_wire(compiled.inputs[i], t, slots, prev_slots, forced);
      if (block.kind == BlockKind::Table) {
        table_in[i] = v;
      } else {
        in[i] = v;
      }
    }
    auto out = [&](std::size_t port, Value v) {
      slots[static_cast<std::size_t>(compiled.slots[port])] = v;
    };
    auto& st = state[static_cast<std::size_t>(b)];
    switch (block.kind) {
      case BlockKind::Not:
        out(0, from_bool(in[0] == 0));
        break;
      case BlockKind::Conj:
        out(0, from_bool(in[0] != 0 && in[1] != 0));
        break;
      case BlockKind::Disj:
        out(0, from_bool(in[0] != 0 || in[1] != 0));
        break;
      case BlockKind::Rs:
        out(0, from_bool(std::get<LatchState>(st).step(in[0] != 0, in[1] != 0)));
        break;
      case BlockKind::Sel:
        out(0, sel(in[0] != 0, in[1], in[2]));
        break;
      case BlockKind::Init:
        out(0, from_bool(is_init(t)));
        break;
      case BlockKind::Const:
        out(0, block.value);
        break;
      case BlockKind::Eq:
        out(0, from_bool(in[0] == block.value));
        break;
      case BlockKind::Ton:
      case BlockKind::Tof:
      case BlockKind::Tp: {
        const auto r = std::visit(
            [&](auto& timer) -> TimerReading {
              using S = std::decay_t<decltype(timer)>;
              if constexpr (std::is_same_v<S, OnDelayTimer> || std::is_same_v<S, OffDelayTimer> ||
                            std::is_same_v<S, PulseTimer>) {
                return timer.step(t, sample, in[0] != 0, delta);
              } else {
                return {};
              }
            },
            st);
        out(0, from_bool(r.q));
        out(1, r.et.value);
        break;
      }
      case BlockKind::Table: {
        std::vector<int> rows;
        for (std::size_t r = 0; r < block.table_rows.size(); ++r) {
          bool match = true;
          for (const auto& [name, want] : block.table_rows[r].when) {
            const auto pos = std::find(block.table_inputs.begin(), block.table_inputs.end(), name) -
                             block.table_inputs.begin();
            if ((table_in[static_cast<std::size_t>(pos)] != 0) != want) {
              match = false;
              break;
            }
          }
          if (match) rows.push_back(static_cast<int>(r));
        }
        if (rows.empty()) {
          throw EvaluationFault(t, block.id, "no table row applies", TableFault::Kind::Gap);
        }
        if (rows.size() > 1) {
          throw EvaluationFault(t, block.id,
                                "table rows " + std::to_string(rows[0] + 1) + " and " +
                                    std::to_string(rows[1] + 1) + " both apply",
                                TableFault::Kind::Overlap);
        }
        auto& table_state = std::get<detail::TableState>(st);
        const auto& result = block.table_rows[static_cast<std::size_t>(rows[0])].result;
        table_state.prev = result ? *result : table_state.prev;
        out(0, table_state.prev);
        break;
      }
    }
  }
}

std::vector<Value> Simulator::external_values(const SignalMap& inputs, Tick t) const {
  std::vector<Value> values;
  values.reserve(netlist_.inputs.size());
  for (const auto& port : netlist_.inputs) values.push_back(inputs.find(port.name)->second[t]);
  return values;
}

RecordedRun Simulator::execute(const SignalMap& inputs, const SampleSchedule& schedule,
                               bool record) const {
  const Tick horizon = schedule.horizon();
  for (const auto& port : netlist_.inputs) {
    auto it = inputs.find(port.name);
    if (it == inputs.end()) {
      throw std::invalid_argument("no trajectory for input port '" + port.name + "'");
    }
    if (it->second.horizon() != horizon) {
      throw std::invalid_argument("input '" + port.name + "' has horizon " +
                                  std::to_string(it->second.horizon()) + ", schedule has " +
                                  std::to_string(horizon));
    }
  }
  for (const auto& block : netlist_.blocks) {
    if ((block.kind == BlockKind::Ton || block.kind == BlockKind::Tof ||
         block.kind == BlockKind::Tp) &&
        !schedule.domain().aligned(block.pt)) {
      throw DomainError(DomainError::Kind::Misaligned,
                        "preset of '" + block.id + "' is not a multiple of delta");
    }
  }

  RecordedRun run;
  auto& trace = run.trace;
  trace.domain = schedule.domain();
  trace.samples = schedule.samples();

  std::vector<std::vector<Value>> wire_values(netlist_.wires.size(),
                                              std::vector<Value>(static_cast<std::size_t>(horizon) + 1));
  auto state = initial_states();
  std::vector<Value> slots(static_cast<std::size_t>(slot_count_), 0);
  std::vector<Value> prev = slots;
  for (Tick t = 0; t <= horizon; ++t) {
    eval_tick(t, schedule, external_values(inputs, t), prev, slots, state, nullptr);
    for (std::size_t w = 0; w < wires_.size(); ++w) {
      wire_values[w][static_cast<std::size_t>(t)] =
          read_wire(static_cast<int>(w), t, slots, prev, nullptr);
    }
    if (record) {
      run.states_after.push_back(state);
      run.slots_after.push_back(slots);
    }
    prev = slots;
  }

  for (std::size_t w = 0; w < netlist_.wires.size(); ++w) {
    const auto& wire = netlist_.wires[w];
    trace.wire_order.push_back(wire.name);
    trace.wires.emplace(wire.name, Signal(std::move(wire_values[w])));
    std::optional<ValueType> type;
    if (wire.source.external()) {
      type = netlist_.find_input(wire.source.port)->type;
    } else {
      type = port_type(*netlist_.find_block(wire.source.block), wire.source.port, false);
    }
    trace.types.emplace(wire.name, *type);
    for (const auto& sink : wire.sinks) {
      if (sink.external()) trace.output_wires[sink.port] = wire.name;
    }
  }
  return run;
}

SimTrace Simulator::run(const SignalMap& inputs, const SampleSchedule& schedule) const {
  return execute(inputs, schedule, false).trace;
}

RecordedRun Simulator::run_recorded(const SignalMap& inputs,
                                    const SampleSchedule& schedule) const {
  return execute(inputs, schedule, true);
}

Value Simulator::replay_tick(const RecordedRun& run, const SignalMap& inputs,
                             const SampleSchedule& schedule, Tick t,
                             const std::map<std::string, Value, std::less<>>& feedback_values,
                             std::string_view output) const {
  if (t <= 0 || t >= static_cast<Tick>(run.states_after.size())) {
    throw std::out_of_range("replay_tick needs 0 < t <= horizon");
  }
  std::vector<std::optional<Value>> forced(wires_.size());
  int output_wire = -1;
  for (std::size_t w = 0; w < netlist_.wires.size(); ++w) {
    const auto& wire = netlist_.wires[w];
    auto it = feedback_values.find(wire.name);
    if (it != feedback_values.end()) forced[w] = it->second;
    for (const auto& sink : wire.sinks) {
      if (sink.external() && sink.port == output) output_wire = static_cast<int>(w);
    }
  }
  if (output_wire < 0) throw std::out_of_range("no output port '" + std::string(output) + "'");
  auto state = run.states_after[static_cast<std::size_t>(t) - 1];
  const auto& prev = run.slots_after[static_cast<std::size_t>(t) - 1];
  std::vector<Value> slots = prev;
  eval_tick(t, schedule, external_values(inputs, t), prev, slots, state, &forced);
  return read_wire(output_wire, t, slots, prev, &forced);
}

std::vector<std::string> Simulator::feedback_wires_of(std::string_view output) const {
  std::optional<PortRef> source;
  for (const auto& wire : netlist_.wires) {
    for (const auto& sink : wire.sinks) {
      if (sink.external() && sink.port == output) source = wire.source;
    }
  }
  std::vector<std::string> out;
  if (!source) return out;
  for (const auto& wire : netlist_.wires) {
    if (wire.feedback && wire.source == *source) out.push_back(wire.name);
  }
  return out;
}

SimTrace simulate(const Netlist& netlist, const SignalMap& inputs,
                  const SampleSchedule& schedule) {
  return Simulator(netlist).run(inputs, schedule);
}

}  // namespace fbcheck
