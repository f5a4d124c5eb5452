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

// A requirements oracle for one netlist output, and the boundary map that
// translates requirement-level inputs into netlist inputs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fbcheck/netlist.hpp"
#include "fbcheck/table.hpp"

namespace fbcheck {

struct Requirement {
  std::string name;
  std::string output;  // netlist output port the oracle describes
  ValueType type;
  // May throw TableFaultError when the underlying table is unhealthy.
  std::function<Signal(const SignalMap& inputs, const SampleSchedule& schedule)> oracle;
};

using Boundary = std::function<SignalMap(const SignalMap& inputs)>;

/// Everything needed to check one implementation against one requirement.
struct Subject {
  std::string name;
  Netlist netlist;
  std::vector<ExternalPort> inputs;  // requirement-level interface
  Requirement requirement;
  Boundary boundary;                 // identity when empty
  std::optional<TableSpec> table;    // requirement table, if it has one

  SignalMap impl_inputs(const SignalMap& inputs) const {
    return boundary ? boundary(inputs) : inputs;
  }
};

}  // namespace fbcheck
