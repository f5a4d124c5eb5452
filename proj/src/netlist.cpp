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

#include "fbcheck/netlist.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fbcheck {

namespace {

struct KindName {
  BlockKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {BlockKind::Not, "NOT"},   {BlockKind::Conj, "CONJ"},   {BlockKind::Disj, "DISJ"},
    {BlockKind::Rs, "RS"},     {BlockKind::Sel, "SEL"},     {BlockKind::Init, "INIT"},
    {BlockKind::Ton, "TON"},   {BlockKind::Tof, "TOF"},     {BlockKind::Tp, "TP"},
    {BlockKind::Const, "CONST"}, {BlockKind::Eq, "EQ"},     {BlockKind::Table, "TABLE"},
};

bool is_timer(BlockKind kind) {
  return kind == BlockKind::Ton || kind == BlockKind::Tof || kind == BlockKind::Tp;
}

}  // namespace

std::string to_string(BlockKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

std::optional<BlockKind> parse_block_kind(std::string_view text) {
  for (const auto& k : kKindNames) {
    if (text == k.name) return k.kind;
  }
  return std::nullopt;
}

std::vector<std::string> input_ports(const BlockInstance& block) {
  switch (block.kind) {
    case BlockKind::Not:
    case BlockKind::Ton:
    case BlockKind::Tof:
    case BlockKind::Tp:
    case BlockKind::Eq:
      return {"in"};
    case BlockKind::Conj:
    case BlockKind::Disj:
      return {"in0", "in1"};
    case BlockKind::Rs:
      return {"set", "reset"};
    case BlockKind::Sel:
      return {"g", "in0", "in1"};
    case BlockKind::Init:
    case BlockKind::Const:
      return {};
    case BlockKind::Table:
      return block.table_inputs;
  }
  return {};
}

std::vector<std::string> output_ports(const BlockInstance& block) {
  if (is_timer(block.kind)) return {"q", "et"};
  if (block.kind == BlockKind::Rs) return {"q"};
  return {"out"};
}

std::optional<ValueType> port_type(const BlockInstance& block, std::string_view port,
                                   bool is_input) {
  const auto ports = is_input ? input_ports(block) : output_ports(block);
  if (std::find(ports.begin(), ports.end(), port) == ports.end()) return std::nullopt;
  switch (block.kind) {
    case BlockKind::Sel:
      if (is_input && port == "g") return ValueType::boolean();
      return block.type;
    case BlockKind::Const:
      return block.type;
    case BlockKind::Eq:
      return is_input ? block.type : ValueType::boolean();
    case BlockKind::Table:
      return is_input ? ValueType::boolean() : block.type;
    case BlockKind::Ton:
    case BlockKind::Tof:
    case BlockKind::Tp:
      return (!is_input && port == "et") ? ValueType::duration() : ValueType::boolean();
    default:
      return ValueType::boolean();
  }
}

PortRef PortRef::parse(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return {"", std::string(text)};
  return {std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
}

const BlockInstance* Netlist::find_block(std::string_view id) const {
  for (const auto& b : blocks) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

const ExternalPort* Netlist::find_input(std::string_view port) const {
  for (const auto& p : inputs) {
    if (p.name == port) return &p;
  }
  return nullptr;
}

const ExternalPort* Netlist::find_output(std::string_view port) const {
  for (const auto& p : outputs) {
    if (p.name == port) return &p;
  }
  return nullptr;
}

const Wire* Netlist::find_wire(std::string_view wire) const {
  for (const auto& w : wires) {
    if (w.name == wire) return &w;
  }
  return nullptr;
}

Wire* Netlist::find_wire(std::string_view wire) {
  for (auto& w : wires) {
    if (w.name == wire) return &w;
  }
  return nullptr;
}

std::string to_string(Issue::Kind kind) {
  switch (kind) {
    case Issue::Kind::DuplicateName:
      return "duplicate-name";
    case Issue::Kind::BadParameter:
      return "bad-parameter";
    case Issue::Kind::UnknownPort:
      return "unknown-port";
    case Issue::Kind::UnconnectedSink:
      return "unconnected-sink";
    case Issue::Kind::MultiplyDriven:
      return "multiply-driven";
    case Issue::Kind::MissingFeedbackInit:
      return "missing-feedback-init";
    case Issue::Kind::TypeMismatch:
      return "type-mismatch";
    case Issue::Kind::AlgebraicLoop:
      return "algebraic-loop";
  }
  return "?";
}

bool ValidationReport::has(Issue::Kind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const Issue& i) { return i.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << fbcheck::to_string(issue.kind) << " at " << issue.where << ": " << issue.message
       << "\n";
  }
  return os.str();
}

namespace {

class Validator {
 public:
  explicit Validator(const Netlist& n) : n_(n) {}

  ValidationReport run() {
    check_names();
    check_parameters();
    check_wires();
    check_sinks();
    check_loops();
    return std::move(report_);
  }

 private:
  void add(Issue::Kind kind, std::string where, std::string message) {
    report_.issues.push_back({kind, std::move(where), std::move(message)});
  }

  void check_names() {
    std::set<std::string> seen;
    for (const auto& p : n_.inputs) {
      if (!seen.insert(p.name).second) add(Issue::Kind::DuplicateName, p.name, "port declared twice");
    }
    for (const auto& p : n_.outputs) {
      if (!seen.insert(p.name).second) add(Issue::Kind::DuplicateName, p.name, "port declared twice");
    }
    std::set<std::string> ids;
    for (const auto& b : n_.blocks) {
      if (b.id.empty() || b.id.find('.') != std::string::npos) {
        add(Issue::Kind::BadParameter, b.id, "block ids must be non-empty and contain no '.'");
      }
      if (!ids.insert(b.id).second) add(Issue::Kind::DuplicateName, b.id, "block id used twice");
    }
    std::set<std::string> wires;
    for (const auto& w : n_.wires) {
      if (!wires.insert(w.name).second) add(Issue::Kind::DuplicateName, w.name, "wire name used twice");
    }
  }

  void check_parameters() {
    for (const auto& b : n_.blocks) {
      if (b.kind == BlockKind::Eq && b.type.kind == ValueKind::Duration) {
        add(Issue::Kind::BadParameter, b.id, "EQ compares booleans or enumerations");
      }
      if ((b.kind == BlockKind::Const || b.kind == BlockKind::Eq) &&
          b.type.kind == ValueKind::Enum &&
          (b.value < 0 || static_cast<std::size_t>(b.value) >= b.type.cardinality())) {
        add(Issue::Kind::BadParameter, b.id, "value outside " + b.type.name());
      }
      if (b.kind != BlockKind::Table) continue;
      if (b.table_rows.empty()) add(Issue::Kind::BadParameter, b.id, "table has no rows");
      for (const auto& row : b.table_rows) {
        for (const auto& [name, _] : row.when) {
          if (std::find(b.table_inputs.begin(), b.table_inputs.end(), name) ==
              b.table_inputs.end()) {
            add(Issue::Kind::BadParameter, b.id, "row reads undeclared input '" + name + "'");
          }
        }
      }
    }
  }

  std::optional<ValueType> source_type(const Wire& w) {
    if (w.source.external()) {
      if (const auto* p = n_.find_input(w.source.port)) return p->type;
      add(Issue::Kind::UnknownPort, w.name, "source '" + w.source.str() + "' is not an input port");
      return std::nullopt;
    }
    const auto* b = n_.find_block(w.source.block);
    auto type = b ? port_type(*b, w.source.port, false) : std::nullopt;
    if (!type) add(Issue::Kind::UnknownPort, w.name, "no output port '" + w.source.str() + "'");
    return type;
  }

  std::optional<ValueType> sink_type(const Wire& w, const PortRef& sink) {
    if (sink.external()) {
      if (const auto* p = n_.find_output(sink.port)) return p->type;
      add(Issue::Kind::UnknownPort, w.name, "sink '" + sink.str() + "' is not an output port");
      return std::nullopt;
    }
    const auto* b = n_.find_block(sink.block);
    auto type = b ? port_type(*b, sink.port, true) : std::nullopt;
    if (!type) add(Issue::Kind::UnknownPort, w.name, "no input port '" + sink.str() + "'");
    return type;
  }

  void check_wires() {
    for (const auto& w : n_.wires) {
      const auto from = source_type(w);
      for (const auto& sink : w.sinks) {
        const auto to = sink_type(w, sink);
        if (from && to && !(*from == *to)) {
          add(Issue::Kind::TypeMismatch, w.name,
              w.source.str() + " (" + from->name() + ") drives " + sink.str() + " (" +
                  to->name() + ")");
        }
        drivers_[sink.str()] += 1;
      }
      if (w.feedback && !w.init) {
        add(Issue::Kind::MissingFeedbackInit, w.name, "feedback wire declares no initial value");
      }
      if (w.feedback && w.source.external()) {
        add(Issue::Kind::BadParameter, w.name, "feedback wires must start at a block output");
      }
    }
  }

  void check_sinks() {
    auto check = [&](const std::string& sink) {
      const int count = drivers_.count(sink) ? drivers_.at(sink) : 0;
      if (count == 0) add(Issue::Kind::UnconnectedSink, sink, "sink is not driven");
      if (count > 1) {
        add(Issue::Kind::MultiplyDriven, sink, "sink driven by " + std::to_string(count) + " wires");
      }
    };
    for (const auto& b : n_.blocks) {
      for (const auto& port : input_ports(b)) check(b.id + "." + port);
    }
    for (const auto& p : n_.outputs) check(p.name);
  }

  void check_loops() {
    std::map<std::string, std::set<std::string>> succ;
    for (const auto& b : n_.blocks) succ[b.id];
    for (const auto& w : n_.wires) {
      if (w.feedback || w.source.external() || !n_.find_block(w.source.block)) continue;
      for (const auto& sink : w.sinks) {
        if (!sink.external() && n_.find_block(sink.block)) succ[w.source.block].insert(sink.block);
      }
    }
    // Depth-first search for a back edge; report the first cycle found.
    std::map<std::string, int> color;
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> cycle;
    auto visit = [&](auto&& self, const std::string& node) -> void {
      color[node] = 1;
      stack.push_back(node);
      for (const auto& next : succ[node]) {
        if (cycle) break;
        if (color[next] == 1) {
          auto start = std::find(stack.begin(), stack.end(), next);
          cycle = std::vector<std::string>(start, stack.end());
          cycle->push_back(next);
        } else if (color[next] == 0) {
          self(self, next);
        }
      }
      stack.pop_back();
      color[node] = 2;
    };
    for (const auto& b : n_.blocks) {
      if (!cycle && color[b.id] == 0) visit(visit, b.id);
    }
    if (!cycle) return;
    std::string path;
    for (const auto& id : *cycle) {
      if (!path.empty()) path += " -> ";
      const auto* b = n_.find_block(id);
      path += id + " (" + to_string(b->kind) + ")";
    }
    add(Issue::Kind::AlgebraicLoop, cycle->front(),
        "cycle without a feedback wire: " + path);
  }

  const Netlist& n_;
  ValidationReport report_;
  std::map<std::string, int> drivers_;
};

}  // namespace

ValidationReport validate_netlist(const Netlist& netlist) { return Validator(netlist).run(); }

}  // namespace fbcheck
