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

#include "fbcheck/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace fbcheck {

using json_io::as_bool;
using json_io::as_int;
using json_io::as_string;
using json_io::reject_unknown;
using json_io::require;

namespace {

std::string field(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const Json* optional_field(const Json& obj, std::string_view key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

Duration duration_field(const Json& obj, const std::string& path, std::string_view key,
                        Duration fallback) {
  const auto* j = optional_field(obj, key);
  if (!j) return fallback;
  const auto v = as_int(*j, field(path, key));
  if (v < 0) throw ConfigError(field(path, key), "durations are non-negative");
  return Duration(v);
}

SampleSchedule parse_schedule(const Json& j, const TickDomain& domain) {
  const std::string path = "schedule";
  reject_unknown(j, path, {"every_tick", "period", "samples", "tmin", "tmax", "zero_start"});
  const int forms = (j.contains("every_tick") ? 1 : 0) + (j.contains("period") ? 1 : 0) +
                    (j.contains("samples") ? 1 : 0);
  if (forms != 1) throw ConfigError(path, "give exactly one of every_tick, period, samples");
  try {
    if (const auto* e = optional_field(j, "every_tick")) {
      if (!as_bool(*e, field(path, "every_tick"))) {
        throw ConfigError(field(path, "every_tick"), "must be true when present");
      }
      return SampleSchedule::every_tick(domain);
    }
    if (const auto* p = optional_field(j, "period")) {
      return SampleSchedule::periodic(domain, static_cast<Tick>(as_int(*p, field(path, "period"))));
    }
    Json full = j;
    full["delta"] = domain.delta();
    full["horizon"] = domain.horizon();
    return json_io::schedule_from_json(full, path);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

Json expectation_to_json(const Expectation& e, const ValueType& type) {
  Json out;
  out["check"] = e.check;
  out["tick"] = e.tick;
  out["category"] = to_string(e.category);
  if (e.expected) out["expected"] = json_io::value_to_json(*e.expected, type);
  if (e.actual) out["actual"] = json_io::value_to_json(*e.actual, type);
  if (!e.rows.empty()) {
    Json rows = Json::array();
    for (int r : e.rows) rows.push_back(r + 1);
    out["rows"] = rows;
  }
  return out;
}

Expectation expectation_from_json(const Json& j, const ValueType& type) {
  const std::string path = "expect";
  reject_unknown(j, path, {"check", "tick", "category", "expected", "actual", "rows"});
  Expectation e;
  e.check = as_string(require(j, path, "check"), field(path, "check"));
  static const char* kChecks[] = {"completeness", "disjointness", "consistency", "correctness",
                                  "induction"};
  if (std::find(std::begin(kChecks), std::end(kChecks), e.check) == std::end(kChecks)) {
    throw ConfigError(field(path, "check"), "unknown check '" + e.check + "'");
  }
  e.tick = static_cast<Tick>(as_int(require(j, path, "tick"), field(path, "tick")));
  try {
    e.category = parse_category(as_string(require(j, path, "category"), field(path, "category")));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(field(path, "category"), err.what());
  }
  if (const auto* v = optional_field(j, "expected")) {
    e.expected = json_io::value_from_json(*v, type, field(path, "expected"));
  }
  if (const auto* v = optional_field(j, "actual")) {
    e.actual = json_io::value_from_json(*v, type, field(path, "actual"));
  }
  if (const auto* rows = optional_field(j, "rows")) {
    if (!rows->is_array()) throw ConfigError(field(path, "rows"), "expected an array");
    for (std::size_t i = 0; i < rows->size(); ++i) {
      const auto r = as_int((*rows)[i], field(path, "rows") + "[" + std::to_string(i) + "]");
      if (r < 1) throw ConfigError(field(path, "rows"), "rows are numbered from 1");
      e.rows.push_back(static_cast<int>(r) - 1);
    }
  }
  return e;
}

ValueType output_type(const Scenario& s) {
  if (s.subsystem) return s.subsystem->subject().requirement.type;
  if (s.netlist && !s.netlist->outputs.empty()) return s.netlist->outputs.front().type;
  return ValueType::boolean();
}

}  // namespace

Subject SubsystemRef::subject() const {
  try {
    if (name == "trip-sealed-in") return trip_sealedin_subject(parse_variant(variant), sealedin);
    if (name == "pushbutton") {
      if (variant == "original") return pushbutton_subject(PushbuttonTable::Original, pushbutton);
      if (variant == "revised") return pushbutton_subject(PushbuttonTable::Revised, pushbutton);
      if (variant == "literal") return pushbutton_subject(PushbuttonTable::Literal, pushbutton);
      throw std::invalid_argument("unknown variant '" + variant + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("variant", e.what());
  }
  throw ConfigError("subsystem", "unknown subsystem '" + name + "'");
}

Json SubsystemRef::constants_json() const {
  Json out;
  if (name == "trip-sealed-in") {
    out["k_sealindelay"] = sealedin.k_sealindelay.value;
    out["delta_l"] = sealedin.delta_l.value;
    out["delta_r"] = sealedin.delta_r.value;
  } else {
    out["k_debounce"] = pushbutton.k_debounce.value;
    out["k_stuck"] = pushbutton.k_stuck.value;
    out["delta_l"] = pushbutton.delta_l.value;
    out["delta_r"] = pushbutton.delta_r.value;
  }
  return out;
}

void parse_constants(SubsystemRef& ref, const Json& constants, std::int64_t delta,
                     const std::string& path) {
  try {
    if (ref.name == "trip-sealed-in") {
      reject_unknown(constants, path, {"k_sealindelay", "delta_l", "delta_r"});
      auto& c = ref.sealedin;
      c.k_sealindelay = duration_field(constants, path, "k_sealindelay", c.k_sealindelay);
      c.delta_l = duration_field(constants, path, "delta_l", c.delta_l);
      c.delta_r = duration_field(constants, path, "delta_r", c.delta_r);
      c.validate(delta);
    } else if (ref.name == "pushbutton") {
      reject_unknown(constants, path, {"k_debounce", "k_stuck", "delta_l", "delta_r"});
      auto& c = ref.pushbutton;
      c.k_debounce = duration_field(constants, path, "k_debounce", c.k_debounce);
      c.k_stuck = duration_field(constants, path, "k_stuck", c.k_stuck);
      c.delta_l = duration_field(constants, path, "delta_l", c.delta_l);
      c.delta_r = duration_field(constants, path, "delta_r", c.delta_r);
      c.validate(delta);
    }
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

SpaceFile parse_space(const Json& doc, const std::vector<ExternalPort>& inputs) {
  reject_unknown(doc, "", {"discipline", "delta", "tmin", "tmax", "schedules", "enumerate",
                           "random_cases", "seed", "cap", "constants"});
  SpaceFile out;
  auto& space = out.space;
  space.inputs = inputs;
  try {
    space.discipline =
        parse_discipline(as_string(require(doc, "", "discipline"), "discipline"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("discipline", e.what());
  }
  const auto delta = as_int(require(doc, "", "delta"), "delta");
  if (delta <= 0) throw ConfigError("delta", "must be positive");
  const Duration tmin(as_int(require(doc, "", "tmin"), "tmin"));
  const Duration tmax(as_int(require(doc, "", "tmax"), "tmax"));
  if (doc.contains("schedules") == doc.contains("enumerate")) {
    throw ConfigError("", "give exactly one of schedules, enumerate");
  }
  try {
    if (const auto* list = optional_field(doc, "schedules")) {
      if (!list->is_array() || list->empty()) {
        throw ConfigError("schedules", "expected a non-empty array");
      }
      for (std::size_t i = 0; i < list->size(); ++i) {
        const auto p = "schedules[" + std::to_string(i) + "]";
        const auto& j = (*list)[i];
        reject_unknown(j, p, {"gaps", "tail", "period", "horizon", "samples"});
        std::vector<Tick> samples{0};
        Tick horizon = 0;
        if (const auto* gaps = optional_field(j, "gaps")) {
          if (!gaps->is_array()) throw ConfigError(p + ".gaps", "expected an array");
          for (std::size_t g = 0; g < gaps->size(); ++g) {
            samples.push_back(samples.back() +
                              static_cast<Tick>(as_int((*gaps)[g], p + ".gaps[" + std::to_string(g) + "]")));
          }
          const auto* tail = optional_field(j, "tail");
          horizon = samples.back() + (tail ? static_cast<Tick>(as_int(*tail, p + ".tail")) : 0);
        } else if (const auto* period = optional_field(j, "period")) {
          const auto gap = static_cast<Tick>(as_int(*period, p + ".period"));
          if (gap <= 0) throw ConfigError(p + ".period", "must be positive");
          horizon = static_cast<Tick>(as_int(require(j, p, "horizon"), p + ".horizon"));
          samples.clear();
          for (Tick t = 0; t <= horizon; t += gap) samples.push_back(t);
        } else {
          samples.clear();
          const auto& s = require(j, p, "samples");
          if (!s.is_array()) throw ConfigError(p + ".samples", "expected an array");
          for (std::size_t k = 0; k < s.size(); ++k) {
            samples.push_back(static_cast<Tick>(as_int(s[k], p + ".samples[" + std::to_string(k) + "]")));
          }
          horizon = static_cast<Tick>(as_int(require(j, p, "horizon"), p + ".horizon"));
        }
        try {
          space.schedules.emplace_back(TickDomain(delta, horizon), std::move(samples), tmin, tmax);
        } catch (const DomainError& e) {
          throw ConfigError(p, e.what());
        }
      }
    } else {
      const auto& e = doc["enumerate"];
      reject_unknown(e, "enumerate", {"samples", "gaps", "tail"});
      const auto count = static_cast<int>(as_int(require(e, "enumerate", "samples"), "enumerate.samples"));
      std::vector<Tick> gaps;
      const auto& g = require(e, "enumerate", "gaps");
      if (!g.is_array()) throw ConfigError("enumerate.gaps", "expected an array");
      for (std::size_t i = 0; i < g.size(); ++i) {
        gaps.push_back(static_cast<Tick>(as_int(g[i], "enumerate.gaps[" + std::to_string(i) + "]")));
      }
      const Tick tail = e.contains("tail") ? static_cast<Tick>(as_int(e["tail"], "enumerate.tail")) : 0;
      space.schedules = enumerate_schedules(delta, count, gaps, tmin, tmax, tail);
      if (space.schedules.empty()) throw ConfigError("enumerate", "no schedule fits");
    }
  } catch (const DomainError& e) {
    throw ConfigError("schedules", e.what());
  }
  if (const auto* n = optional_field(doc, "random_cases")) {
    space.random_cases = static_cast<std::uint64_t>(as_int(*n, "random_cases"));
  }
  if (space.discipline == Discipline::RandomFiltered && space.random_cases == 0) {
    throw ConfigError("random_cases", "random-filtered spaces need a positive case count");
  }
  if (const auto* seed = optional_field(doc, "seed")) {
    space.seed = static_cast<std::uint64_t>(as_int(*seed, "seed"));
  }
  if (const auto* cap = optional_field(doc, "cap")) {
    space.cap = static_cast<std::uint64_t>(as_int(*cap, "cap"));
  }
  if (const auto* c = optional_field(doc, "constants")) out.constants = *c;
  for (const auto& port : inputs) {
    if (port.type.cardinality() == 0) {
      throw ConfigError("", "input '" + port.name + "' cannot be enumerated");
    }
  }
  return out;
}

InputSpace default_space(const std::string& subsystem, const std::vector<ExternalPort>& inputs) {
  InputSpace space;
  space.inputs = inputs;
  if (subsystem == "pushbutton") {
    space.discipline = Discipline::Filtered;
    space.schedules.push_back(SampleSchedule::periodic(TickDomain(10, 12), 2));
    return space;
  }
  space.discipline = Discipline::SampleAligned;
  const std::vector<std::vector<Tick>> gap_lists = {{1, 1, 1, 1}, {2, 2, 2, 2}, {1, 2, 1, 2}};
  for (const auto& gaps : gap_lists) {
    Tick last = 0;
    for (Tick g : gaps) last += g;
    space.schedules.push_back(
        SampleSchedule::from_gaps(TickDomain(10, last + 1), gaps, Duration(10), Duration(20)));
  }
  return space;
}

Scenario parse_scenario(const Json& doc, const std::string& base_dir) {
  reject_unknown(doc, "", {"domain", "schedule", "subsystem", "variant", "constants", "netlist",
                           "inputs", "expect", "lanes"});
  Scenario s;
  const auto& d = require(doc, "", "domain");
  reject_unknown(d, "domain", {"delta", "horizon"});
  const auto delta = as_int(require(d, "domain", "delta"), "domain.delta");
  const auto horizon = as_int(require(d, "domain", "horizon"), "domain.horizon");
  if (delta <= 0) throw ConfigError("domain.delta", "must be positive");
  if (horizon < 0) throw ConfigError("domain.horizon", "must be non-negative");
  const TickDomain domain(delta, static_cast<Tick>(horizon));
  s.schedule = parse_schedule(require(doc, "", "schedule"), domain);

  const bool has_subsystem = doc.contains("subsystem");
  if (has_subsystem == doc.contains("netlist")) {
    throw ConfigError("", "give exactly one of subsystem, netlist");
  }
  if (has_subsystem) {
    SubsystemRef ref;
    ref.name = as_string(doc["subsystem"], "subsystem");
    ref.variant = as_string(require(doc, "", "variant"), "variant");
    if (ref.name != "trip-sealed-in" && ref.name != "pushbutton") {
      throw ConfigError("subsystem", "unknown subsystem '" + ref.name + "'");
    }
    parse_constants(ref, doc.contains("constants") ? doc["constants"] : Json::object(), delta);
    s.input_ports = ref.subject().inputs;
    s.subsystem = std::move(ref);
  } else {
    if (doc.contains("constants")) throw ConfigError("constants", "only used with a subsystem");
    if (doc.contains("variant")) throw ConfigError("variant", "only used with a subsystem");
    const auto& n = doc["netlist"];
    if (n.is_string()) {
      const auto path = std::filesystem::path(base_dir) / n.get<std::string>();
      s.netlist = json_io::netlist_from_json(json_io::read_file(path.string()), "netlist");
    } else {
      s.netlist = json_io::netlist_from_json(n, "netlist");
    }
    const auto report = validate_netlist(*s.netlist);
    if (!report.ok()) throw ConfigError("netlist", "invalid netlist:\n" + report.to_string());
    s.input_ports = s.netlist->inputs;
  }

  const auto& inputs = require(doc, "", "inputs");
  if (!inputs.is_object()) throw ConfigError("inputs", "expected an object");
  for (const auto& port : s.input_ports) {
    const auto p = "inputs." + port.name;
    if (!inputs.contains(port.name)) throw ConfigError(p, "missing input trajectory");
    s.inputs.emplace(port.name, json_io::signal_from_json(inputs[port.name], port.type,
                                                          domain.horizon(), p));
  }
  if (inputs.size() != s.input_ports.size()) {
    for (const auto& [key, _] : inputs.items()) {
      if (std::none_of(s.input_ports.begin(), s.input_ports.end(),
                       [&](const ExternalPort& port) { return port.name == key; })) {
        throw ConfigError("inputs." + key, "not an input port");
      }
    }
  }
  if (const auto* e = optional_field(doc, "expect")) {
    s.expect = expectation_from_json(*e, output_type(s));
    if (!s.subsystem && s.expect->check != "consistency") {
      throw ConfigError("expect.check", "netlist scenarios can only replay consistency");
    }
  }
  if (const auto* lanes = optional_field(doc, "lanes")) {
    if (!lanes->is_array()) throw ConfigError("lanes", "expected an array");
    for (std::size_t i = 0; i < lanes->size(); ++i) {
      s.lanes.push_back(as_string((*lanes)[i], "lanes[" + std::to_string(i) + "]"));
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  const auto doc = json_io::read_file(path);
  try {
    return parse_scenario(doc, std::filesystem::path(path).parent_path().string());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.path(), std::string(e.what()).substr(e.path().empty() ? 0 : e.path().size() + 2));
  }
}

Json scenario_to_json(const Scenario& s) {
  Json out;
  out["domain"] = {{"delta", s.schedule.delta()}, {"horizon", s.schedule.horizon()}};
  Json sched;
  sched["samples"] = s.schedule.samples();
  sched["tmin"] = s.schedule.tmin().value;
  sched["tmax"] = s.schedule.tmax().value;
  if (!s.schedule.options().require_zero_start) sched["zero_start"] = false;
  out["schedule"] = sched;
  if (s.subsystem) {
    out["subsystem"] = s.subsystem->name;
    out["variant"] = s.subsystem->variant;
    out["constants"] = s.subsystem->constants_json();
  } else if (s.netlist) {
    out["netlist"] = json_io::netlist_to_json(*s.netlist);
  }
  Json inputs = Json::object();
  for (const auto& port : s.input_ports) {
    inputs[port.name] = json_io::signal_to_json(s.inputs.at(port.name), port.type);
  }
  out["inputs"] = inputs;
  if (s.expect) out["expect"] = expectation_to_json(*s.expect, output_type(s));
  if (!s.lanes.empty()) out["lanes"] = s.lanes;
  return out;
}

Scenario counterexample_scenario(const Counterexample& c, const SubsystemRef& ref) {
  Scenario s;
  s.schedule = c.schedule;
  s.subsystem = ref;
  s.input_ports = ref.subject().inputs;
  s.inputs = c.inputs;
  Expectation e;
  e.check = c.check;
  e.tick = c.tick;
  e.category = c.category;
  e.expected = c.expected;
  e.actual = c.actual;
  e.rows = c.rows;
  s.expect = e;
  return s;
}

VerifyPlan plan_verification(const std::string& subsystem, const std::string& variant,
                             const std::optional<Json>& space_doc) {
  VerifyPlan plan;
  auto& ref = plan.ref;
  ref.name = subsystem;
  ref.variant = variant;
  if (ref.name != "trip-sealed-in" && ref.name != "pushbutton") {
    throw ConfigError("subsystem", "unknown subsystem '" + ref.name + "'");
  }
  if (ref.name == "trip-sealed-in" && ref.variant == "literal") {
    throw ConfigError("variant", "trip-sealed-in has variants original and revised");
  }
  plan.subject = ref.subject();
  if (!space_doc) {
    plan.space = default_space(ref.name, plan.subject.inputs);
  } else {
    auto file = parse_space(*space_doc, plan.subject.inputs);
    if (file.constants) {
      parse_constants(ref, *file.constants, file.space.schedules.front().delta());
      plan.subject = ref.subject();
    }
    plan.space = std::move(file.space);
  }
  const auto delta = plan.space.schedules.front().delta();
  for (const auto& s : plan.space.schedules) {
    if (s.delta() != delta) throw ConfigError("schedules", "all schedules must share one delta");
  }
  try {
    if (ref.name == "trip-sealed-in") {
      ref.sealedin.validate(delta);
    } else {
      ref.pushbutton.validate(delta);
    }
  } catch (const DomainError& e) {
    throw ConfigError("constants", e.what());
  }
  return plan;
}

std::vector<CheckResult> run_verification(const VerifyPlan& plan, const CheckOptions& options) {
  const auto& subject = plan.subject;
  const auto& space = plan.space;
  std::vector<CheckResult> results;
  if (subject.table) {
    results.push_back(check_completeness(*subject.table, space, options));
    results.push_back(check_disjointness(*subject.table, space, options));
  }
  results.push_back(check_consistency(subject, space, options));
  results.push_back(check_correctness(subject, space, options));
  if (!Simulator(subject.netlist).feedback_wires_of(subject.requirement.output).empty()) {
    results.push_back(check_induction(subject, space, options));
  }
  return results;
}

ScenarioRun run_scenario(const Scenario& s) {
  ScenarioRun run;
  std::optional<Subject> subject;
  if (s.subsystem) {
    subject = s.subsystem->subject();
    run.trace = Simulator(subject->netlist).run(subject->impl_inputs(s.inputs), s.schedule);
  } else {
    run.trace = Simulator(*s.netlist).run(s.inputs, s.schedule);
  }
  for (const auto& name : run.trace.wire_order) {
    run.lanes.push_back({name, run.trace.types.at(name), run.trace.wires.at(name)});
  }
  if (subject) {
    const auto& req = subject->requirement;
    try {
      run.lanes.push_back({"REQ_" + req.output, req.type, req.oracle(s.inputs, s.schedule)});
    } catch (const TableFaultError& e) {
      run.requirement_fault = e.what();
    }
  }
  if (!s.lanes.empty()) {
    std::vector<Lane> chosen;
    for (std::size_t i = 0; i < s.lanes.size(); ++i) {
      auto it = std::find_if(run.lanes.begin(), run.lanes.end(),
                             [&](const Lane& l) { return l.name == s.lanes[i]; });
      if (it == run.lanes.end()) {
        throw ConfigError("lanes[" + std::to_string(i) + "]", "no signal named '" + s.lanes[i] + "'");
      }
      chosen.push_back(*it);
    }
    run.lanes = std::move(chosen);
  }
  return run;
}

ReplayOutcome replay_expectation(const Scenario& s) {
  if (!s.expect) return {false, "scenario has no expectation to replay"};
  const auto& e = *s.expect;
  Probe probe;
  if (s.subsystem) {
    const auto subject = s.subsystem->subject();
    if (e.check == "completeness") probe = completeness_probe(*subject.table);
    if (e.check == "disjointness") probe = disjointness_probe(*subject.table);
    if (e.check == "consistency") probe = consistency_probe(subject);
    if (e.check == "correctness") probe = correctness_probe(subject);
    if (e.check == "induction") probe = induction_probe(subject);
  } else {
    Subject subject;
    subject.netlist = *s.netlist;
    if (!s.netlist->outputs.empty()) {
      subject.requirement.output = s.netlist->outputs.front().name;
      subject.requirement.type = s.netlist->outputs.front().type;
    }
    probe = consistency_probe(subject);
  }
  const auto got = probe(s.inputs, s.schedule);
  if (!got) return {false, e.check + " passes on this scenario; divergence not reproduced"};
  const bool same = got->tick == e.tick && got->category == e.category &&
                    got->expected == e.expected && got->actual == e.actual && got->rows == e.rows;
  Counterexample shown = *got;
  shown.check = e.check;
  return {same, (same ? "reproduced: " : "different divergence: ") + shown.describe()};
}

// ---------------------------------------------------------------------------
// CSV

std::string write_csv(const std::vector<Lane>& lanes) {
  std::ostringstream os;
  os << "tick";
  for (const auto& l : lanes) os << "," << l.name << ":" << l.type.name();
  os << "\n";
  const Tick horizon = lanes.empty() ? -1 : lanes.front().values.horizon();
  for (Tick t = 0; t <= horizon; ++t) {
    os << t;
    for (const auto& l : lanes) os << "," << format_value(l.values[t], l.type);
    os << "\n";
  }
  return os.str();
}

std::vector<Lane> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream cells(s);
    while (std::getline(cells, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  auto where = [&] { return "line " + std::to_string(line_no); };

  if (!std::getline(in, line)) throw ConfigError("line 1", "empty CSV");
  ++line_no;
  const auto header = split(line);
  if (header.empty() || header[0] != "tick") throw ConfigError(where(), "first column must be 'tick'");
  std::vector<Lane> lanes;
  std::vector<std::vector<Value>> columns;
  for (std::size_t i = 1; i < header.size(); ++i) {
    const auto colon = header[i].rfind(':');
    if (colon == std::string::npos) throw ConfigError(where(), "column '" + header[i] + "' lacks ':type'");
    Lane lane;
    lane.name = header[i].substr(0, colon);
    try {
      lane.type = ValueType::parse(header[i].substr(colon + 1));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where(), e.what());
    }
    lanes.push_back(std::move(lane));
  }
  columns.resize(lanes.size());
  Tick expected_tick = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ConfigError(where(), "expected " + std::to_string(header.size()) + " cells, got " +
                                     std::to_string(cells.size()));
    }
    if (cells[0] != std::to_string(expected_tick)) {
      throw ConfigError(where(), "expected tick " + std::to_string(expected_tick));
    }
    for (std::size_t i = 0; i < lanes.size(); ++i) {
      try {
        columns[i].push_back(parse_value(cells[i + 1], lanes[i].type));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where(), lanes[i].name + ": " + e.what());
      }
    }
    ++expected_tick;
  }
  if (expected_tick == 0) throw ConfigError(where(), "no rows");
  for (std::size_t i = 0; i < lanes.size(); ++i) lanes[i].values = Signal(std::move(columns[i]));
  return lanes;
}

// ---------------------------------------------------------------------------
// Timing diagram

namespace {

char numeric_glyph(Value v, std::int64_t unit) {
  if (v < 0 || v % unit != 0) return '#';
  const auto n = v / unit;
  if (n < 10) return static_cast<char>('0' + n);
  if (n < 36) return static_cast<char>('a' + (n - 10));
  return '#';
}

void emit(std::ostringstream& os, const std::string& label, std::size_t width,
          const std::string& body) {
  std::string line = label;
  line.resize(width, ' ');
  line += body;
  while (!line.empty() && line.back() == ' ') line.pop_back();
  os << line << "\n";
}

}  // namespace

std::string render_diagram(const std::vector<Lane>& lanes, const SampleSchedule& schedule) {
  const Tick horizon = schedule.horizon();
  const auto n = static_cast<std::size_t>(horizon) + 1;
  std::size_t width = 6;
  for (const auto& l : lanes) width = std::max(width, l.name.size());
  width += 2;

  std::ostringstream os;
  std::string tens(n, ' '), units(n, ' '), samples(n, ' ');
  for (Tick t = 0; t <= horizon; ++t) {
    if (t % 10 == 0) tens[static_cast<std::size_t>(t)] = static_cast<char>('0' + (t / 10) % 10);
    units[static_cast<std::size_t>(t)] = static_cast<char>('0' + t % 10);
    if (schedule.is_sample(t)) samples[static_cast<std::size_t>(t)] = '^';
  }
  emit(os, "tick", width, tens);
  emit(os, "", width, units);
  emit(os, "sample", width, samples);

  std::vector<std::string> legend;
  for (const auto& lane : lanes) {
    const auto& v = lane.values;
    if (lane.type.kind == ValueKind::Bool) {
      std::string high(n, ' '), low(n, ' ');
      for (Tick t = 0; t <= horizon; ++t) {
        const auto i = static_cast<std::size_t>(t);
        const bool on = v[t] != 0;
        const bool edge = t > 0 && on != (v[t - 1] != 0);
        high[i] = edge ? '+' : (on ? '-' : ' ');
        low[i] = edge ? '+' : (on ? ' ' : '_');
      }
      emit(os, lane.name, width, high);
      emit(os, "", width, low);
      continue;
    }
    std::string body(n, ' ');
    const std::int64_t unit = lane.type.kind == ValueKind::Duration ? schedule.delta() : 1;
    for (Tick t = 0; t <= horizon; ++t) body[static_cast<std::size_t>(t)] = numeric_glyph(v[t], unit);
    emit(os, lane.name, width, body);
    if (lane.type.kind == ValueKind::Duration) {
      legend.push_back(lane.name + ": elapsed time in units of delta = " +
                       std::to_string(schedule.delta()));
    } else {
      std::string text = lane.name + ":";
      const auto& symbols = find_enum(lane.type.enum_name)->symbols;
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        text += " " + std::to_string(i) + "=" + symbols[i];
      }
      legend.push_back(text);
    }
  }
  if (!legend.empty()) {
    os << "\n";
    for (const auto& l : legend) os << l << "\n";
  }
  return os.str();
}

}  // namespace fbcheck
