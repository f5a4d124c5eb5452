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

// Deterministic tick-by-tick evaluation of a validated netlist.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fbcheck/netlist.hpp"
#include "fbcheck/table.hpp"

namespace fbcheck {

class InvalidNetlist : public std::invalid_argument {
 public:
  explicit InvalidNetlist(ValidationReport report)
      : std::invalid_argument("invalid netlist:\n" + report.to_string()),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// A block could not produce an output at some tick (for instance a table
/// block with no applicable row). This is a consistency counterexample.
class EvaluationFault : public std::runtime_error {
 public:
  EvaluationFault(Tick tick, std::string block, std::string reason,
                  std::optional<TableFault::Kind> table_fault = std::nullopt)
      : std::runtime_error("evaluation fault in block '" + block + "' at tick " +
                           std::to_string(tick) + ": " + reason),
        tick_(tick),
        block_(std::move(block)),
        reason_(std::move(reason)),
        table_fault_(table_fault) {}

  Tick tick() const { return tick_; }
  const std::string& block() const { return block_; }
  const std::string& reason() const { return reason_; }
  std::optional<TableFault::Kind> table_fault() const { return table_fault_; }

 private:
  Tick tick_;
  std::string block_;
  std::string reason_;
  std::optional<TableFault::Kind> table_fault_;
};

struct SimTrace {
  TickDomain domain{1, 0};
  std::vector<Tick> samples;
  std::vector<std::string> wire_order;
  SignalMap wires;
  std::map<std::string, ValueType, std::less<>> types;
  std::map<std::string, std::string, std::less<>> output_wires;  // output port -> wire

  const Signal& wire(std::string_view name) const;
  const Signal& output(std::string_view port) const;
};

namespace detail {

struct TableState {
  Value prev = 0;
};

using BlockState =
    std::variant<std::monostate, LatchState, OnDelayTimer, OffDelayTimer, PulseTimer, TableState>;

}  // namespace detail

/// A run that also keeps every block's state after each tick, so single ticks
/// can be re-evaluated under different feedback values.
struct RecordedRun {
  SimTrace trace;
  std::vector<std::vector<detail::BlockState>> states_after;
  std::vector<std::vector<Value>> slots_after;
};

class Simulator {
 public:
  /// Throws InvalidNetlist if validation fails.
  explicit Simulator(Netlist netlist);

  const Netlist& netlist() const { return netlist_; }

  /// `inputs` must cover every external input over the schedule's horizon.
  /// Throws EvaluationFault when a block cannot produce a value.
  SimTrace run(const SignalMap& inputs, const SampleSchedule& schedule) const;
  RecordedRun run_recorded(const SignalMap& inputs, const SampleSchedule& schedule) const;

  /// Re-evaluates tick `t` (> 0) from the recorded state at t - 1, with the
  /// named feedback wires forced to the given values, and returns the value
  /// at output port `output`.
  Value replay_tick(const RecordedRun& run, const SignalMap& inputs,
                    const SampleSchedule& schedule, Tick t,
                    const std::map<std::string, Value, std::less<>>& feedback_values,
                    std::string_view output) const;

  /// Feedback wires whose source port also drives `output`.
  std::vector<std::string> feedback_wires_of(std::string_view output) const;

  const std::vector<int>& evaluation_order() const { return order_; }

 private:
  struct CompiledBlock {
    std::vector<int> inputs;  // wire index per input port
    std::vector<int> slots;   // slot index per output port
  };
  struct CompiledWire {
    int slot = -1;
    bool feedback = false;
    Value init = 0;
  };

  std::vector<detail::BlockState> initial_states() const;
  void eval_tick(Tick t, const SampleSchedule& schedule, const std::vector<Value>& external,
                 const std::vector<Value>& prev_slots, std::vector<Value>& slots,
                 std::vector<detail::BlockState>& state,
                 const std::vector<std::optional<Value>>* forced) const;
  RecordedRun execute(const SignalMap& inputs, const SampleSchedule& schedule, bool record) const;
  std::vector<Value> external_values(const SignalMap& inputs, Tick t) const;
  Value read_wire(int wire, Tick t, const std::vector<Value>& slots,
                  const std::vector<Value>& prev_slots,
                  const std::vector<std::optional<Value>>* forced) const;

  Netlist netlist_;
  std::vector<CompiledBlock> blocks_;
  std::vector<CompiledWire> wires_;
  std::vector<int> order_;
  int slot_count_ = 0;
};

SimTrace simulate(const Netlist& netlist, const SignalMap& inputs,
                  const SampleSchedule& schedule);

}  // namespace fbcheck
