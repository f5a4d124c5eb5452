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

// fbcheck: simulate scenarios, verify the case-study subsystems, check
// requirement tables.
//
// Exit status: 0 pass, 1 counterexample, 2 usage or configuration error,
// 3 input space above the cardinality cap.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fbcheck/scenario.hpp"
#include "fbcheck/subsystems.hpp"
#include "fbcheck/timing_ops.hpp"
#include "fbcheck/verifier.hpp"

namespace {

using namespace fbcheck;

constexpr int kPass = 0;
constexpr int kCounterexample = 1;
constexpr int kUsage = 2;
constexpr int kRefused = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError(path, "cannot write file");
  out << text;
}

int cmd_simulate(const std::string& scenario_path, const std::string& trace_path, bool diagram) {
  const auto scenario = load_scenario(scenario_path);
  const auto run = run_scenario(scenario);
  if (!trace_path.empty()) write_text(trace_path, write_csv(run.lanes));
  if (diagram) std::cout << render_diagram(run.lanes, scenario.schedule);
  if (run.requirement_fault) std::cout << "requirement fault: " << *run.requirement_fault << "\n";
  if (scenario.expect) {
    const auto outcome = replay_expectation(scenario);
    std::cout << outcome.message << "\n";
    return outcome.reproduced ? kPass : kCounterexample;
  }
  return kPass;
}

struct VerifyArgs {
  std::string subsystem;
  std::string variant;
  std::string space_path;
  std::string report_path;
  std::string counterexample_path = "fbcheck-counterexample.json";
  bool collect_all = false;
};

int cmd_verify(const VerifyArgs& args) {
  std::optional<Json> space_doc;
  if (!args.space_path.empty()) space_doc = json_io::read_file(args.space_path);
  const auto plan = plan_verification(args.subsystem, args.variant, space_doc);
  const auto& subject = plan.subject;
  const auto& space = plan.space;
  const auto& ref = plan.ref;

  const auto cardinality = space.cardinality();
  std::cout << "subject " << subject.name << ": " << to_string(space.discipline) << " space, "
            << space.schedules.size() << " schedule(s), " << cardinality << " cases\n";

  CheckOptions options;
  options.collect_all = args.collect_all;
  const auto results = run_verification(plan, options);

  const CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    std::cout << r.summary() << "\n";
    if (!r.passed()) {
      if (!r.replayed) std::cout << "  warning: counterexample did not replay\n";
      if (r.shrunk) {
        std::cout << "  shrunk to horizon " << r.shrunk->schedule.horizon() << " with "
                  << change_points(r.shrunk->inputs) << " input change point(s): "
                  << r.shrunk->describe() << "\n";
      }
      for (const auto& [sig, n] : r.signatures) {
        if (args.collect_all) std::cout << "  " << n << " x " << sig << "\n";
      }
      if (!first_failure) first_failure = &r;
    }
  }
  if (!args.report_path.empty()) {
    Json report;
    report["subject"] = subject.name;
    report["discipline"] = to_string(space.discipline);
    report["cases"] = cardinality;
    report["verdict"] = first_failure ? "fail" : "pass";
    Json checks = Json::array();
    for (const auto& r : results) checks.push_back(result_to_json(r));
    report["checks"] = checks;
    write_text(args.report_path, report.dump(2) + "\n");
  }
  if (!first_failure) return kPass;
  const auto& cex = first_failure->shrunk ? *first_failure->shrunk : *first_failure->counterexample;
  json_io::write_file(args.counterexample_path, scenario_to_json(counterexample_scenario(cex, ref)));
  std::cout << "counterexample scenario written to " << args.counterexample_path << "\n";
  return kCounterexample;
}

int cmd_tables(const std::string& name, std::int64_t pt_ticks, const std::string& space_path) {
  TableSpec table;
  InputSpace space;
  const Duration pt(pt_ticks * 10);
  if (name == "ton-q" || name == "ton-et" || name == "ton-et-literal") {
    table = name == "ton-q" ? ton_q_table(pt) : name == "ton-et" ? ton_et_table(pt) : ton_et_literal_table(pt);
    space.inputs = {{"IN", ValueType::boolean()}};
    space.discipline = Discipline::PerTick;
    space.schedules = {SampleSchedule::every_tick(TickDomain(10, 10)),
                       SampleSchedule::periodic(TickDomain(10, 10), 2)};
  } else if (name == "sealedin-req") {
    table = sealedin_req_table(SealedInConsts{});
    space = default_space("trip-sealed-in", trip_sealedin_subject(Variant::Revised, {}).inputs);
  } else if (name.rfind("pushbutton-", 0) == 0) {
    const auto which = name.substr(std::string("pushbutton-").size());
    const auto kind = which == "original" ? PushbuttonTable::Original
                      : which == "revised" ? PushbuttonTable::Revised
                                           : PushbuttonTable::Literal;
    table = pushbutton_table(kind, PushbuttonConsts{});
    space.inputs = {{"m", pb_status()}};
    space.discipline = Discipline::PerTick;
    space.schedules = {SampleSchedule::periodic(TickDomain(10, 12), 2)};
  }
  if (!space_path.empty()) {
    std::vector<ExternalPort> inputs;
    for (const auto& [n, t] : table.inputs) inputs.push_back({n, t});
    space = parse_space(json_io::read_file(space_path), inputs).space;
  }
  std::cout << "table " << table.name << ": " << table.rows.size() << " rows, "
            << to_string(space.discipline) << " space, " << space.cardinality() << " cases\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::cout << "  row " << i + 1 << ": " << table.rows[i].label << "\n";
  }
  bool ok = true;
  for (const auto& r : {check_completeness(table, space), check_disjointness(table, space)}) {
    std::cout << r.summary() << "\n";
    if (r.passed()) continue;
    ok = false;
    const auto& c = r.shrunk ? *r.shrunk : *r.counterexample;
    std::cout << "  witness (schedule samples";
    for (Tick t : c.schedule.samples()) std::cout << " " << t;
    std::cout << "):\n";
    for (const auto& port : space.inputs) {
      std::cout << "    " << port.name << " =";
      const auto& s = c.inputs.at(port.name);
      for (Tick t = 0; t <= s.horizon(); ++t) std::cout << " " << format_value(s[t], port.type);
      std::cout << "\n";
    }
  }
  return ok ? kPass : kCounterexample;
}

int cmd_survey(int max_gap, int max_tolerance, int d_ticks, int horizon) {
  const auto results = refinement_survey(10, max_gap, max_tolerance, d_ticks, horizon);
  std::cout << "tmin tmax   dl   dr  inputs  verdict\n";
  for (const auto& r : results) {
    const auto& p = r.params;
    std::printf("%4lld %4lld %4lld %4lld %7llu  %s\n", static_cast<long long>(p.tmin.value),
                static_cast<long long>(p.tmax.value), static_cast<long long>(p.dl.value),
                static_cast<long long>(p.dr.value),
                static_cast<unsigned long long>(r.inputs_checked),
                r.holds() ? "refines" : "violated");
  }
  return kPass;
}

int cmd_export(const std::string& subsystem, const std::string& variant) {
  const auto netlist = subsystem == "pushbutton"
                           ? build_pushbutton_impl(PushbuttonConsts{})
                           : build_trip_sealedin_impl(parse_variant(variant), SealedInConsts{});
  std::cout << json_io::netlist_to_json(netlist).dump(2) << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Function block verification workbench"};
  app.require_subcommand(1);

  std::string scenario_path, trace_path;
  bool diagram = false;
  auto* simulate = app.add_subcommand("simulate", "Simulate a scenario");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--trace", trace_path, "Write the per-tick CSV trace ('-' for stdout)");
  simulate->add_flag("--diagram", diagram, "Print an ASCII timing diagram");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check a subsystem implementation");
  verify->add_option("--subsystem", verify_args.subsystem)
      ->required()
      ->check(CLI::IsMember({"trip-sealed-in", "pushbutton"}));
  verify->add_option("--variant", verify_args.variant)
      ->required()
      ->check(CLI::IsMember({"original", "revised", "literal"}));
  verify->add_option("--space", verify_args.space_path, "Input space JSON file");
  verify->add_option("--report", verify_args.report_path, "Write a JSON report ('-' for stdout)");
  verify->add_option("--counterexample", verify_args.counterexample_path,
                     "Where to write a counterexample scenario");
  verify->add_flag("--collect-all", verify_args.collect_all,
                   "Scan every case and count failure signatures");

  std::string table_name, table_space;
  std::int64_t pt_ticks = 3;
  auto* tables = app.add_subcommand("tables", "Check table completeness and disjointness");
  tables->add_option("--check", table_name)
      ->required()
      ->check(CLI::IsMember({"ton-q", "ton-et", "ton-et-literal", "pushbutton-original",
                             "pushbutton-revised", "pushbutton-literal", "sealedin-req"}));
  tables->add_option("--pt", pt_ticks, "TON preset in ticks (delta = 10)")
      ->check(CLI::Range(1, 20));
  tables->add_option("--space", table_space, "Input space JSON file");

  int max_gap = 3, max_tol = 2, d_ticks = 4, survey_horizon = 10;
  auto* survey = app.add_subcommand("survey", "Refinement of Held_For_I into the tolerance envelope");
  survey->add_option("--max-gap", max_gap)->check(CLI::Range(1, 6));
  survey->add_option("--max-tolerance", max_tol)->check(CLI::Range(0, 4));
  survey->add_option("--d", d_ticks)->check(CLI::Range(1, 8));
  survey->add_option("--horizon", survey_horizon)->check(CLI::Range(1, 14));

  std::string export_subsystem, export_variant = "original";
  auto* exporter = app.add_subcommand("export", "Print a preset netlist as JSON");
  exporter->add_option("--subsystem", export_subsystem)
      ->required()
      ->check(CLI::IsMember({"trip-sealed-in", "pushbutton"}));
  exporter->add_option("--variant", export_variant)
      ->check(CLI::IsMember({"original", "revised"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(scenario_path, trace_path, diagram);
    if (*verify) return cmd_verify(verify_args);
    if (*tables) return cmd_tables(table_name, pt_ticks, table_space);
    if (*survey) return cmd_survey(max_gap, max_tol, d_ticks, survey_horizon);
    if (*exporter) return cmd_export(export_subsystem, export_variant);
  } catch (const CardinalityRefused& e) {
    std::cerr << "fbcheck: " << e.what() << "\n";
    return kRefused;
  } catch (const ConfigError& e) {
    std::cerr << "fbcheck: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidNetlist& e) {
    std::cerr << "fbcheck: " << e.what();
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "fbcheck: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fbcheck: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
