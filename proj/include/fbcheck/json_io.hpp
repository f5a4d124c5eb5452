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

// JSON documents for netlists, schedules and signals. Parsing is strict:
// unknown keys and ill-typed fields raise ConfigError naming the field path.

#include <stdexcept>
#include <string>
#include <string_view>

#include "fbcheck/netlist.hpp"
#include "fbcheck/value.hpp"

#include "json.hpp"

namespace fbcheck {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace json_io {

/// Parses text, turning syntax errors into ConfigError with line and column.
Json parse_text(std::string_view text, const std::string& source = "<input>");
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& doc);

// Field access helpers; every error names `path`.
void reject_unknown(const Json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed);
const Json& require(const Json& obj, const std::string& path, std::string_view key);
std::int64_t as_int(const Json& j, const std::string& path);
bool as_bool(const Json& j, const std::string& path);
std::string as_string(const Json& j, const std::string& path);

Json value_to_json(Value v, const ValueType& type);
Value value_from_json(const Json& j, const ValueType& type, const std::string& path);

/// A signal as a list of [tick, value] change points.
Json signal_to_json(const Signal& s, const ValueType& type);
Signal signal_from_json(const Json& j, const ValueType& type, Tick horizon,
                        const std::string& path);

Json schedule_to_json(const SampleSchedule& schedule);
SampleSchedule schedule_from_json(const Json& j, const std::string& path);

Json netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const Json& j, const std::string& path = "");

}  // namespace json_io

}  // namespace fbcheck
