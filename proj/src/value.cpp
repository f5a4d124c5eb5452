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

#include "fbcheck/value.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace fbcheck {

namespace {

const std::array<EnumType, 3>& builtin_enums() {
  static const std::array<EnumType, 3> enums{{
      {"TripEnum", {"e_Trip", "e_NotTrip"}},
      {"PbStatus", {"e_Pressed", "e_NotPressed"}},
      {"PbOutput", {"e_pbNotDebounced", "e_pbDebounced", "e_pbStuck"}},
  }};
  return enums;
}

}  // namespace

const EnumType* find_enum(std::string_view name) {
  for (const auto& e : builtin_enums()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ValueType ValueType::enumeration(std::string name) {
  if (find_enum(name) == nullptr) {
    throw std::invalid_argument("unknown enumeration '" + name + "'");
  }
  return {ValueKind::Enum, std::move(name)};
}

ValueType ValueType::parse(std::string_view text) {
  if (text == "bool") return boolean();
  if (text == "duration") return duration();
  return enumeration(std::string(text));
}

std::string ValueType::name() const {
  switch (kind) {
    case ValueKind::Bool:
      return "bool";
    case ValueKind::Duration:
      return "duration";
    case ValueKind::Enum:
      return enum_name;
  }
  return "?";
}

std::size_t ValueType::cardinality() const {
  switch (kind) {
    case ValueKind::Bool:
      return 2;
    case ValueKind::Duration:
      return 0;
    case ValueKind::Enum:
      return find_enum(enum_name)->symbols.size();
  }
  return 0;
}

std::string format_value(Value v, const ValueType& type) {
  switch (type.kind) {
    case ValueKind::Bool:
      return v != 0 ? "1" : "0";
    case ValueKind::Duration:
      return std::to_string(v);
    case ValueKind::Enum: {
      const auto& symbols = find_enum(type.enum_name)->symbols;
      if (v < 0 || static_cast<std::size_t>(v) >= symbols.size()) {
        throw std::out_of_range("enum code " + std::to_string(v) + " outside " +
                                type.enum_name);
      }
      return symbols[static_cast<std::size_t>(v)];
    }
  }
  return {};
}

Value parse_value(std::string_view text, const ValueType& type) {
  auto parse_int = [&](std::string_view s) {
    Value v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    return v;
  };
  switch (type.kind) {
    case ValueKind::Bool:
      if (text == "1" || text == "true") return 1;
      if (text == "0" || text == "false") return 0;
      throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
    case ValueKind::Duration: {
      const Value v = parse_int(text);
      if (v < 0) throw std::invalid_argument("negative duration");
      return v;
    }
    case ValueKind::Enum: {
      const auto& symbols = find_enum(type.enum_name)->symbols;
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == text) return static_cast<Value>(i);
      }
      throw std::invalid_argument("'" + std::string(text) + "' is not a " + type.enum_name);
    }
  }
  return 0;
}

}  // namespace fbcheck
