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

#include "fbcheck/table.hpp"

namespace fbcheck {

namespace {

const Signal& lookup(const SignalMap& context, std::string_view name) {
  auto it = context.find(name);
  if (it == context.end()) {
    throw std::out_of_range("table context has no signal '" + std::string(name) + "'");
  }
  return it->second;
}

std::string row_list(const TableSpec& table, const std::vector<int>& rows) {
  std::string out;
  for (int r : rows) {
    if (!out.empty()) out += ", ";
    out += "row " + std::to_string(r + 1) + " [" + table.rows[static_cast<std::size_t>(r)].label +
           "]";
  }
  return out;
}

}  // namespace

bool TableSpec::has_no_change() const {
  for (const auto& row : rows) {
    if (row.result.kind == TableResult::Kind::NoChange) return true;
  }
  return false;
}

SignalMap TableSpec::context(const SignalMap& inputs, const SampleSchedule& schedule) const {
  return derive ? derive(inputs, schedule) : inputs;
}

std::string TableFault::describe(const TableSpec& table) const {
  if (kind == Kind::Gap) {
    return table.name + ": no row applies at tick " + std::to_string(tick);
  }
  return table.name + ": rows overlap at tick " + std::to_string(tick) + ": " +
         row_list(table, rows);
}

std::vector<int> matching_rows(const TableSpec& table, const SignalMap& context, Tick t) {
  std::vector<int> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].guard(context, t)) out.push_back(static_cast<int>(i));
  }
  return out;
}

Signal evaluate_table(const TableSpec& table, const SignalMap& context, Tick horizon,
                      TableMode mode) {
  std::vector<Value> out(static_cast<std::size_t>(horizon) + 1);
  for (Tick t = 0; t <= horizon; ++t) {
    if (t == 0 && table.initial_overrides) {
      out[0] = *table.initial;
      continue;
    }
    const auto rows = matching_rows(table, context, t);
    if (rows.empty() || (mode == TableMode::Strict && rows.size() > 1)) {
      TableFault fault{rows.empty() ? TableFault::Kind::Gap : TableFault::Kind::Overlap, t,
                       rows};
      throw TableFaultError(fault, fault.describe(table));
    }
    const auto& result = table.rows[static_cast<std::size_t>(rows.front())].result;
    Value v = 0;
    switch (result.kind) {
      case TableResult::Kind::Constant:
        v = result.constant;
        break;
      case TableResult::Kind::Signal:
        v = lookup(context, result.signal)[t];
        break;
      case TableResult::Kind::NoChange:
        v = t == 0 ? *table.initial : out[static_cast<std::size_t>(t) - 1];
        break;
    }
    out[static_cast<std::size_t>(t)] = v;
  }
  return Signal(std::move(out));
}

void validate_table(const TableSpec& table) {
  if ((table.has_no_change() || table.initial_overrides) && !table.initial) {
    throw std::invalid_argument(table.name + ": no-change rows need an initial value");
  }
  if (table.rows.empty()) throw std::invalid_argument(table.name + ": table has no rows");
  for (const auto& row : table.rows) {
    if (!row.guard) throw std::invalid_argument(table.name + ": row without a guard");
  }
}

namespace guards {

Guard is_true(std::string name) {
  return [name = std::move(name)](const SignalMap& c, Tick t) { return lookup(c, name)[t] != 0; };
}

Guard is_false(std::string name) {
  return [name = std::move(name)](const SignalMap& c, Tick t) { return lookup(c, name)[t] == 0; };
}

Guard equals(std::string name, Value v) {
  return [name = std::move(name), v](const SignalMap& c, Tick t) {
    return lookup(c, name)[t] == v;
  };
}

Guard less_than(std::string lhs, std::string rhs) {
  return [lhs = std::move(lhs), rhs = std::move(rhs)](const SignalMap& c, Tick t) {
    return lookup(c, lhs)[t] < lookup(c, rhs)[t];
  };
}

Guard at_least(std::string lhs, std::string rhs) {
  return [lhs = std::move(lhs), rhs = std::move(rhs)](const SignalMap& c, Tick t) {
    return lookup(c, lhs)[t] >= lookup(c, rhs)[t];
  };
}

Guard all(std::vector<Guard> parts) {
  return [parts = std::move(parts)](const SignalMap& c, Tick t) {
    for (const auto& g : parts) {
      if (!g(c, t)) return false;
    }
    return true;
  };
}

Guard negate(Guard g) {
  return [g = std::move(g)](const SignalMap& c, Tick t) { return !g(c, t); };
}

}  // namespace guards

}  // namespace fbcheck
