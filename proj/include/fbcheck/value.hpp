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

// Wire values. Every signal in a netlist carries an int64 payload interpreted
// through a ValueType: booleans as 0/1, durations in physical units, and
// enumerations as the index of their symbol.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fbcheck/time_core.hpp"

namespace fbcheck {

using Value = std::int64_t;
using Signal = Trajectory<Value>;
using SignalMap = std::map<std::string, Signal, std::less<>>;

enum class ValueKind { Bool, Duration, Enum };

struct EnumType {
  std::string name;
  std::vector<std::string> symbols;
};

/// Built-in enumerations: TripEnum, PbStatus, PbOutput.
const EnumType* find_enum(std::string_view name);

struct ValueType {
  ValueKind kind = ValueKind::Bool;
  std::string enum_name;

  static ValueType boolean() { return {ValueKind::Bool, {}}; }
  static ValueType duration() { return {ValueKind::Duration, {}}; }
  static ValueType enumeration(std::string name);

  /// "bool", "duration" or an enum name.
  static ValueType parse(std::string_view text);
  std::string name() const;
  // Number of distinct values, or 0 for durations.
  std::size_t cardinality() const;

  bool operator==(const ValueType&) const = default;
};

std::string format_value(Value v, const ValueType& type);
Value parse_value(std::string_view text, const ValueType& type);

inline Value from_bool(bool b) { return b ? 1 : 0; }
inline Signal to_signal(const Trajectory<bool>& p) {
  return p.map([](bool b) { return from_bool(b); });
}
inline Signal to_signal(const Trajectory<Duration>& p) {
  return p.map([](Duration d) { return Value{d.value}; });
}
inline Trajectory<bool> to_bools(const Signal& s) {
  return s.map([](Value v) { return v != 0; });
}
inline Trajectory<Duration> to_durations(const Signal& s) {
  return s.map([](Value v) { return Duration(v); });
}

}  // namespace fbcheck
