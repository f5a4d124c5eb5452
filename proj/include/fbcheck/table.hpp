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

// Executable horizontal condition tables: rows of guard -> result, where a
// result may be a constant, the value of a context signal, or "no change".

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fbcheck/value.hpp"

namespace fbcheck {

using Guard = std::function<bool(const SignalMap&, Tick)>;

struct TableResult {
  enum class Kind { Constant, Signal, NoChange };

  Kind kind = Kind::NoChange;
  Value constant = 0;
  std::string signal;

  static TableResult value(Value v) { return {Kind::Constant, v, {}}; }
  static TableResult of(std::string signal_name) {
    return {Kind::Signal, 0, std::move(signal_name)};
  }
  static TableResult no_change() { return {}; }
};

struct TableRow {
  std::string label;
  Guard guard;
  TableResult result;
};

struct TableSpec {
  std::string name;
  std::string output;
  ValueType output_type;
  std::vector<TableRow> rows;

  // Inputs the table reads, before derivation.
  std::vector<std::pair<std::string, ValueType>> inputs;
  // Extends the inputs with derived signals (timers, Held_For terms) that
  // guards may read. Identity when empty.
  std::function<SignalMap(const SignalMap& inputs, const SampleSchedule&)> derive;

  // Value used when NC fires at tick 0. With `initial_overrides`, tick 0
  // always takes this value and the rows apply from tick 1 on.
  std::optional<Value> initial;
  bool initial_overrides = false;

  bool has_no_change() const;
  SignalMap context(const SignalMap& inputs, const SampleSchedule& schedule) const;
};

enum class TableMode {
  Strict,      // exactly one row must match
  FirstMatch,  // IF / ELSEIF reading: the first matching row wins
};

struct TableFault {
  enum class Kind { Gap, Overlap };

  Kind kind = Kind::Gap;
  Tick tick = 0;
  std::vector<int> rows;  // matching rows (overlap only)

  std::string describe(const TableSpec& table) const;
};

class TableFaultError : public std::runtime_error {
 public:
  TableFaultError(TableFault fault, const std::string& what)
      : std::runtime_error(what), fault_(std::move(fault)) {}
  const TableFault& fault() const { return fault_; }

 private:
  TableFault fault_;
};

std::vector<int> matching_rows(const TableSpec& table, const SignalMap& context, Tick t);

/// Evaluates the table over 0..horizon. Throws TableFaultError when a tick
/// matches no row, or (in Strict mode) more than one.
Signal evaluate_table(const TableSpec& table, const SignalMap& context, Tick horizon,
                      TableMode mode = TableMode::Strict);

/// Throws std::invalid_argument if the table uses NC without an initial value
/// or names an unknown result signal.
void validate_table(const TableSpec& table);

namespace guards {

Guard is_true(std::string name);
Guard is_false(std::string name);
Guard equals(std::string name, Value v);
Guard less_than(std::string lhs, std::string rhs);
Guard at_least(std::string lhs, std::string rhs);
Guard all(std::vector<Guard> parts);
Guard negate(Guard g);

}  // namespace guards

}  // namespace fbcheck
