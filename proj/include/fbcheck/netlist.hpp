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

// Function block diagrams as netlists: block instances, named wires from one
// source port to any number of sink ports, and unit-delay feedback wires.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbcheck/blocks.hpp"
#include "fbcheck/value.hpp"

namespace fbcheck {

enum class BlockKind { Not, Conj, Disj, Rs, Sel, Init, Ton, Tof, Tp, Const, Eq, Table };

std::string to_string(BlockKind kind);
std::optional<BlockKind> parse_block_kind(std::string_view text);

struct TableBlockRow {
  std::vector<std::pair<std::string, bool>> when;  // conjunction of literals
  std::optional<Value> result;                     // empty means no change

  bool operator==(const TableBlockRow&) const = default;
};

struct BlockInstance {
  std::string id;
  BlockKind kind = BlockKind::Not;

  Duration pt{0};                           // TON / TOF / TP preset
  EtRule et_rule = EtRule::SaturatedFirst;  // TON
  bool q_init = false;                      // RS
  ValueType type = ValueType::boolean();    // SEL, CONST, EQ, TABLE
  Value value = 0;                          // CONST output, EQ comparand
  std::vector<std::string> table_inputs;    // TABLE
  std::vector<TableBlockRow> table_rows;
  Value table_init = 0;

  bool operator==(const BlockInstance&) const = default;
};

/// Port names of a block instance, in evaluation order.
std::vector<std::string> input_ports(const BlockInstance& block);
std::vector<std::string> output_ports(const BlockInstance& block);
/// Type of a port, or nullopt if the block has no such port.
std::optional<ValueType> port_type(const BlockInstance& block, std::string_view port,
                                   bool is_input);

/// "block.port", or the bare name of an external input/output port.
struct PortRef {
  std::string block;
  std::string port;

  bool external() const { return block.empty(); }
  std::string str() const { return external() ? port : block + "." + port; }
  static PortRef parse(std::string_view text);

  bool operator==(const PortRef&) const = default;
};

struct Wire {
  std::string name;
  PortRef source;
  std::vector<PortRef> sinks;
  bool feedback = false;      // unit delay: sinks read the source's previous-tick value
  std::optional<Value> init;  // value read through a feedback wire at tick 0

  bool operator==(const Wire&) const = default;
};

struct ExternalPort {
  std::string name;
  ValueType type;

  bool operator==(const ExternalPort&) const = default;
};

struct Netlist {
  std::string name;
  std::vector<ExternalPort> inputs;
  std::vector<ExternalPort> outputs;
  std::vector<BlockInstance> blocks;
  std::vector<Wire> wires;

  const BlockInstance* find_block(std::string_view id) const;
  const ExternalPort* find_input(std::string_view name) const;
  const ExternalPort* find_output(std::string_view name) const;
  const Wire* find_wire(std::string_view name) const;
  Wire* find_wire(std::string_view name);

  bool operator==(const Netlist&) const = default;
};

struct Issue {
  enum class Kind {
    DuplicateName,
    BadParameter,
    UnknownPort,
    UnconnectedSink,
    MultiplyDriven,
    MissingFeedbackInit,
    TypeMismatch,
    AlgebraicLoop,
  };

  Kind kind;
  std::string where;
  std::string message;
};

std::string to_string(Issue::Kind kind);

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool has(Issue::Kind kind) const;
  std::string to_string() const;
};

/// Checks that every sink is driven exactly once, ports exist and agree on
/// type, feedback wires carry initial values, and every cycle passes through
/// a feedback wire.
ValidationReport validate_netlist(const Netlist& netlist);

}  // namespace fbcheck
