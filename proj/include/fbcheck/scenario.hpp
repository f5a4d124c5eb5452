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

// Scenario documents (one simulation run, optionally with an expected
// divergence to replay), per-tick CSV traces and ASCII timing diagrams.

#include <optional>
#include <string>
#include <vector>

#include "fbcheck/json_io.hpp"
#include "fbcheck/subsystems.hpp"
#include "fbcheck/verifier.hpp"

namespace fbcheck {

struct SubsystemRef {
  std::string name;     // trip-sealed-in | pushbutton
  std::string variant;  // original | revised (| literal for pushbutton)
  SealedInConsts sealedin;
  PushbuttonConsts pushbutton;

  /// Throws ConfigError for unknown names.
  Subject subject() const;
  Json constants_json() const;
};

struct Expectation {
  std::string check = "correctness";
  Tick tick = 0;
  Category category = Category::Other;
  std::optional<Value> expected;
  std::optional<Value> actual;
  std::vector<int> rows;  // zero-based
};

struct Scenario {
  SampleSchedule schedule{TickDomain(1, 0), {0}, Duration(1), Duration(1)};
  std::optional<SubsystemRef> subsystem;
  std::optional<Netlist> netlist;  // when no subsystem is named
  std::vector<ExternalPort> input_ports;
  SignalMap inputs;
  std::optional<Expectation> expect;
  std::vector<std::string> lanes;  // diagram lanes, all wires when empty
};

/// Reads subsystem constants, keeping defaults for absent keys.
void parse_constants(SubsystemRef& ref, const Json& constants, std::int64_t delta,
                     const std::string& path = "constants");

/// Input space document:
///   {"discipline", "delta", "tmin", "tmax", "schedules" | "enumerate",
///    "random_cases", "seed", "cap", "constants"}
struct SpaceFile {
  InputSpace space;
  std::optional<Json> constants;
};
SpaceFile parse_space(const Json& doc, const std::vector<ExternalPort>& inputs);

/// Default spaces: sample-aligned inputs over three 5-sample schedules for
/// trip-sealed-in, filtered per-tick m sampled every 2 ticks for pushbutton.
InputSpace default_space(const std::string& subsystem, const std::vector<ExternalPort>& inputs);

/// Strict parse; `base_dir` resolves a netlist given as a file path.
Scenario parse_scenario(const Json& doc, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& s);

/// A replayable scenario for a counterexample found on a subsystem.
Scenario counterexample_scenario(const Counterexample& c, const SubsystemRef& ref);

// A subsystem, its requirement-level subject and the input space to check it over.
struct VerifyPlan {
  SubsystemRef ref;
  Subject subject;
  InputSpace space;
};

// Resolves the subsystem and its space (the default space when no document is
// given). Constants in the space document override the defaults.
VerifyPlan plan_verification(const std::string& subsystem, const std::string& variant,
                             const std::optional<Json>& space_doc);

// Table checks (when the requirement has a table), consistency, correctness,
// and the induction cross-check when the output is fed back.
std::vector<CheckResult> run_verification(const VerifyPlan& plan, const CheckOptions& options = {});

struct Lane {
  std::string name;
  ValueType type;
  Signal values;

  bool operator==(const Lane&) const = default;
};

struct ScenarioRun {
  SimTrace trace;
  std::vector<Lane> lanes;  // every wire, then the requirement if available
  std::optional<std::string> requirement_fault;
};

ScenarioRun run_scenario(const Scenario& s);

struct ReplayOutcome {
  bool reproduced = false;
  std::string message;
};
/// Re-runs the check named in the scenario's expectation on its inputs.
ReplayOutcome replay_expectation(const Scenario& s);

std::string write_csv(const std::vector<Lane>& lanes);
/// Inverse of write_csv. Throws ConfigError with the line number.
std::vector<Lane> parse_csv(const std::string& text);

std::string render_diagram(const std::vector<Lane>& lanes, const SampleSchedule& schedule);

}  // namespace fbcheck
