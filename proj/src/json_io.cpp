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

#include "fbcheck/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fbcheck::json_io {

namespace {

std::string field(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

const Json* optional_field(const Json& obj, std::string_view key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

}  // namespace

Json parse_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col),
                      "malformed JSON");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path, "cannot write file");
  out << doc.dump(2) << "\n";
}

void reject_unknown(const Json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  require_object(obj, path.empty() ? "<root>" : path);
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(field(path, key), "unknown key");
    }
  }
}

const Json& require(const Json& obj, const std::string& path, std::string_view key) {
  const auto* j = optional_field(obj, key);
  if (!j) throw ConfigError(field(path, key), "missing required key");
  return *j;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

Json value_to_json(Value v, const ValueType& type) {
  switch (type.kind) {
    case ValueKind::Bool:
      return v != 0;
    case ValueKind::Duration:
      return v;
    case ValueKind::Enum:
      return format_value(v, type);
  }
  return nullptr;
}

Value value_from_json(const Json& j, const ValueType& type, const std::string& path) {
  switch (type.kind) {
    case ValueKind::Bool:
      return from_bool(as_bool(j, path));
    case ValueKind::Duration: {
      const auto v = as_int(j, path);
      if (v < 0) throw ConfigError(path, "durations are non-negative");
      return v;
    }
    case ValueKind::Enum:
      try {
        return parse_value(as_string(j, path), type);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
      }
  }
  return 0;
}

Json signal_to_json(const Signal& s, const ValueType& type) {
  Json out = Json::array();
  for (Tick t = 0; t <= s.horizon(); ++t) {
    if (t == 0 || s[t] != s[t - 1]) out.push_back(Json::array({t, value_to_json(s[t], type)}));
  }
  return out;
}

Signal signal_from_json(const Json& j, const ValueType& type, Tick horizon,
                        const std::string& path) {
  require_array(j, path);
  if (j.empty()) throw ConfigError(path, "change list is empty");
  std::vector<std::pair<Tick, Value>> changes;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = index(path, i);
    const auto& entry = j[i];
    if (!entry.is_array() || entry.size() != 2) throw ConfigError(p, "expected [tick, value]");
    const auto tick = as_int(entry[0], p + "[0]");
    if (i == 0 && tick != 0) throw ConfigError(p, "first change point must be at tick 0");
    if (tick < 0 || tick > horizon) {
      throw ConfigError(p, "tick " + std::to_string(tick) + " outside 0.." + std::to_string(horizon));
    }
    if (!changes.empty() && tick <= changes.back().first) {
      throw ConfigError(p, "change points must be strictly increasing");
    }
    changes.emplace_back(static_cast<Tick>(tick), value_from_json(entry[1], type, p + "[1]"));
  }
  return Signal::from_changes(horizon, changes);
}

Json schedule_to_json(const SampleSchedule& schedule) {
  Json out;
  out["delta"] = schedule.delta();
  out["horizon"] = schedule.horizon();
  out["tmin"] = schedule.tmin().value;
  out["tmax"] = schedule.tmax().value;
  out["samples"] = schedule.samples();
  if (!schedule.options().require_zero_start) out["zero_start"] = false;
  return out;
}

SampleSchedule schedule_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"delta", "horizon", "tmin", "tmax", "samples", "zero_start"});
  try {
    const TickDomain domain(as_int(require(j, path, "delta"), field(path, "delta")),
                            static_cast<Tick>(as_int(require(j, path, "horizon"), field(path, "horizon"))));
    std::vector<Tick> samples;
    const auto sp = field(path, "samples");
    const auto& s = require_array(require(j, path, "samples"), sp);
    for (std::size_t i = 0; i < s.size(); ++i) {
      samples.push_back(static_cast<Tick>(as_int(s[i], index(sp, i))));
    }
    ScheduleOptions options;
    if (const auto* z = optional_field(j, "zero_start")) {
      options.require_zero_start = as_bool(*z, field(path, "zero_start"));
    }
    return SampleSchedule(domain, std::move(samples),
                          Duration(as_int(require(j, path, "tmin"), field(path, "tmin"))),
                          Duration(as_int(require(j, path, "tmax"), field(path, "tmax"))), options);
  } catch (const DomainError& e) {
    throw ConfigError(path.empty() ? "<schedule>" : path, e.what());
  }
}

namespace {

bool has_type(BlockKind kind) {
  return kind == BlockKind::Sel || kind == BlockKind::Const || kind == BlockKind::Eq ||
         kind == BlockKind::Table;
}

bool is_timer(BlockKind kind) {
  return kind == BlockKind::Ton || kind == BlockKind::Tof || kind == BlockKind::Tp;
}

Json block_to_json(const BlockInstance& b) {
  Json out;
  out["id"] = b.id;
  out["kind"] = to_string(b.kind);
  if (is_timer(b.kind)) out["pt"] = b.pt.value;
  if (b.kind == BlockKind::Ton) out["et_rule"] = to_string(b.et_rule);
  if (b.kind == BlockKind::Rs) out["q_init"] = b.q_init;
  if (has_type(b.kind)) out["type"] = b.type.name();
  if (b.kind == BlockKind::Const || b.kind == BlockKind::Eq) {
    out["value"] = value_to_json(b.value, b.type);
  }
  if (b.kind == BlockKind::Table) {
    out["inputs"] = b.table_inputs;
    Json rows = Json::array();
    for (const auto& row : b.table_rows) {
      Json when = Json::object();
      for (const auto& [name, want] : row.when) when[name] = want;
      rows.push_back({{"when", when},
                      {"result", row.result ? value_to_json(*row.result, b.type) : Json(nullptr)}});
    }
    out["rows"] = rows;
    out["init"] = value_to_json(b.table_init, b.type);
  }
  return out;
}

BlockInstance block_from_json(const Json& j, const std::string& path) {
  require_object(j, path);
  BlockInstance b;
  b.id = as_string(require(j, path, "id"), field(path, "id"));
  const auto kind_text = as_string(require(j, path, "kind"), field(path, "kind"));
  const auto kind = parse_block_kind(kind_text);
  if (!kind) throw ConfigError(field(path, "kind"), "unknown block kind '" + kind_text + "'");
  b.kind = *kind;
  switch (b.kind) {
    case BlockKind::Ton:
      reject_unknown(j, path, {"id", "kind", "pt", "et_rule"});
      break;
    case BlockKind::Tof:
    case BlockKind::Tp:
      reject_unknown(j, path, {"id", "kind", "pt"});
      break;
    case BlockKind::Rs:
      reject_unknown(j, path, {"id", "kind", "q_init"});
      break;
    case BlockKind::Sel:
      reject_unknown(j, path, {"id", "kind", "type"});
      break;
    case BlockKind::Const:
    case BlockKind::Eq:
      reject_unknown(j, path, {"id", "kind", "type", "value"});
      break;
    case BlockKind::Table:
      reject_unknown(j, path, {"id", "kind", "type", "inputs", "rows", "init"});
      break;
    default:
      reject_unknown(j, path, {"id", "kind"});
      break;
  }
  if (is_timer(b.kind)) {
    const auto pt = as_int(require(j, path, "pt"), field(path, "pt"));
    if (pt < 0) throw ConfigError(field(path, "pt"), "preset must be non-negative");
    b.pt = Duration(pt);
  }
  if (b.kind == BlockKind::Ton) {
    if (const auto* r = optional_field(j, "et_rule")) {
      try {
        b.et_rule = parse_et_rule(as_string(*r, field(path, "et_rule")));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field(path, "et_rule"), e.what());
      }
    }
  }
  if (b.kind == BlockKind::Rs) {
    if (const auto* q = optional_field(j, "q_init")) b.q_init = as_bool(*q, field(path, "q_init"));
  }
  if (has_type(b.kind)) {
    const auto tp = field(path, "type");
    try {
      b.type = ValueType::parse(as_string(require(j, path, "type"), tp));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(tp, e.what());
    }
  }
  if (b.kind == BlockKind::Const || b.kind == BlockKind::Eq) {
    b.value = value_from_json(require(j, path, "value"), b.type, field(path, "value"));
  }
  if (b.kind == BlockKind::Table) {
    const auto ip = field(path, "inputs");
    const auto& inputs = require_array(require(j, path, "inputs"), ip);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      b.table_inputs.push_back(as_string(inputs[i], index(ip, i)));
    }
    const auto rp = field(path, "rows");
    const auto& rows = require_array(require(j, path, "rows"), rp);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto p = index(rp, i);
      reject_unknown(rows[i], p, {"when", "result"});
      TableBlockRow row;
      const auto wp = field(p, "when");
      const auto& when = require_object(require(rows[i], p, "when"), wp);
      for (const auto& [name, want] : when.items()) {
        row.when.emplace_back(name, as_bool(want, field(wp, name)));
      }
      const auto& result = require(rows[i], p, "result");
      if (!result.is_null()) row.result = value_from_json(result, b.type, field(p, "result"));
      b.table_rows.push_back(std::move(row));
    }
    b.table_init = value_from_json(require(j, path, "init"), b.type, field(path, "init"));
  }
  return b;
}

Json wire_to_json(const Wire& w) {
  Json out;
  out["name"] = w.name;
  out["from"] = w.source.str();
  Json to = Json::array();
  for (const auto& s : w.sinks) to.push_back(s.str());
  out["to"] = to;
  if (w.feedback) {
    const Value init = w.init.value_or(0);
    if (init == 0 || init == 1) {
      out["init"] = init != 0;
    } else {
      out["init"] = init;
    }
  }
  return out;
}

Wire wire_from_json(const Json& j, const std::string& path, bool feedback) {
  if (feedback) {
    reject_unknown(j, path, {"name", "from", "to", "init"});
  } else {
    reject_unknown(j, path, {"name", "from", "to"});
  }
  Wire w;
  w.name = as_string(require(j, path, "name"), field(path, "name"));
  w.source = PortRef::parse(as_string(require(j, path, "from"), field(path, "from")));
  const auto tp = field(path, "to");
  const auto& to = require_array(require(j, path, "to"), tp);
  for (std::size_t i = 0; i < to.size(); ++i) {
    w.sinks.push_back(PortRef::parse(as_string(to[i], index(tp, i))));
  }
  w.feedback = feedback;
  if (feedback) {
    const auto& init = require(j, path, "init");
    w.init = init.is_boolean() ? from_bool(init.get<bool>()) : as_int(init, field(path, "init"));
  }
  return w;
}

Json ports_to_json(const std::vector<ExternalPort>& ports) {
  Json out = Json::array();
  for (const auto& p : ports) out.push_back({{"name", p.name}, {"type", p.type.name()}});
  return out;
}

std::vector<ExternalPort> ports_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<ExternalPort> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = index(path, i);
    reject_unknown(j[i], p, {"name", "type"});
    ExternalPort port;
    port.name = as_string(require(j[i], p, "name"), field(p, "name"));
    try {
      port.type = ValueType::parse(as_string(require(j[i], p, "type"), field(p, "type")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field(p, "type"), e.what());
    }
    out.push_back(std::move(port));
  }
  return out;
}

}  // namespace

Json netlist_to_json(const Netlist& n) {
  Json out;
  out["name"] = n.name;
  out["inputs"] = ports_to_json(n.inputs);
  out["outputs"] = ports_to_json(n.outputs);
  Json blocks = Json::array();
  for (const auto& b : n.blocks) blocks.push_back(block_to_json(b));
  out["blocks"] = blocks;
  Json wires = Json::array();
  Json feedback = Json::array();
  for (const auto& w : n.wires) (w.feedback ? feedback : wires).push_back(wire_to_json(w));
  out["wires"] = wires;
  out["feedback"] = feedback;
  return out;
}

Netlist netlist_from_json(const Json& j, const std::string& path) {
  reject_unknown(j, path, {"name", "inputs", "outputs", "blocks", "wires", "feedback"});
  Netlist n;
  if (const auto* name = optional_field(j, "name")) n.name = as_string(*name, field(path, "name"));
  if (const auto* in = optional_field(j, "inputs")) n.inputs = ports_from_json(*in, field(path, "inputs"));
  if (const auto* out = optional_field(j, "outputs")) {
    n.outputs = ports_from_json(*out, field(path, "outputs"));
  }
  if (const auto* blocks = optional_field(j, "blocks")) {
    const auto bp = field(path, "blocks");
    require_array(*blocks, bp);
    for (std::size_t i = 0; i < blocks->size(); ++i) {
      n.blocks.push_back(block_from_json((*blocks)[i], index(bp, i)));
    }
  }
  for (const auto& [key, fb] : {std::pair{"wires", false}, std::pair{"feedback", true}}) {
    const auto* wires = optional_field(j, key);
    if (!wires) continue;
    const auto wp = field(path, key);
    require_array(*wires, wp);
    for (std::size_t i = 0; i < wires->size(); ++i) {
      n.wires.push_back(wire_from_json((*wires)[i], index(wp, i), fb));
    }
  }
  return n;
}

}  // namespace fbcheck::json_io
