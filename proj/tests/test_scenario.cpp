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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fbcheck/scenario.hpp"
#include "fbcheck/subsystems.hpp"

using namespace fbcheck;

namespace {

std::string source(const std::string& rel) { return std::string(FBCHECK_SOURCE_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("waveform scenario reproduces the on-delay windows") {
  auto s = load_scenario(source("scenarios/ton_waveform.json"));
  auto run = run_scenario(s);
  const auto& in = run.trace.wire("IN");
  const auto& q = run.trace.wire("Q");
  const auto& et = run.trace.wire("ET");
  const Tick pt = 4;
  // Rising/falling edges read off the input.
  std::vector<Tick> rises, falls;
  for (Tick t = 1; t <= in.horizon(); ++t) {
    if (in[t] && !in[t - 1]) rises.push_back(t);
    if (!in[t] && in[t - 1]) falls.push_back(t);
  }
  REQUIRE(rises == std::vector<Tick>{2, 12, 17});
  REQUIRE(falls == std::vector<Tick>{9, 14, 24});
  for (Tick t = 0; t <= q.horizon(); ++t) {
    const bool want = (t >= rises[0] + pt && t < falls[0]) || (t >= rises[2] + pt && t < falls[2]);
    CHECK(q[t] == want);
    if (!in[t]) CHECK(et[t] == 0);
  }
  for (Tick t = rises[0]; t < falls[0]; ++t) CHECK(et[t] == 10 * std::min<Tick>(t - rises[0], pt));

  const auto diagram = render_diagram(run.lanes, s.schedule);
  CHECK(diagram == slurp(source("tests/golden/ton_waveform.txt")));
}

TEST_CASE("csv round trip") {
  auto s = load_scenario(source("scenarios/ton_waveform.json"));
  auto lanes = run_scenario(s).lanes;
  auto text = write_csv(lanes);
  CHECK(text.rfind("tick,IN:bool,Q:bool,ET:duration\n", 0) == 0);
  auto back = parse_csv(text);
  CHECK(back == lanes);
  CHECK(write_csv(back) == text);

  std::vector<Lane> enums{{"f", pb_output(), Signal(std::vector<Value>{0, 2, 1})}};
  CHECK(parse_csv(write_csv(enums)) == enums);
  CHECK_THROWS(parse_csv("tick,a:bool\n0,maybe\n"));
}

TEST_CASE("scenario documents round trip") {
  auto s = load_scenario(source("scenarios/ton_waveform.json"));
  auto doc = scenario_to_json(s);
  auto again = parse_scenario(doc);
  CHECK(scenario_to_json(again).dump() == doc.dump());
  CHECK(again.inputs == s.inputs);
}

TEST_CASE("scenario validation errors name the field") {
  auto doc = json_io::read_file(source("scenarios/ton_waveform.json"));
  auto bad = doc;
  bad["extra"] = 1;
  CHECK_THROWS_AS(parse_scenario(bad), ConfigError);
  bad = doc;
  bad["domain"]["horizon"] = -1;
  CHECK_THROWS_AS(parse_scenario(bad), ConfigError);
  bad = doc;
  bad["inputs"]["IN"] = Json::parse("[[1, true]]");
  try {
    parse_scenario(bad);
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.path().find("inputs.IN") != std::string::npos);
  }
  bad = doc;
  bad["inputs"].erase("IN");
  CHECK_THROWS(parse_scenario(bad));
}

TEST_CASE("counterexample scenarios replay") {
  auto subject = trip_sealedin_subject(Variant::Original, {});
  auto space = default_space("trip-sealed-in", subject.inputs);
  auto r = check_correctness(subject, space);
  REQUIRE(r.shrunk);
  SubsystemRef ref;
  ref.name = "trip-sealed-in";
  ref.variant = "original";
  auto s = counterexample_scenario(*r.shrunk, ref);
  auto reparsed = parse_scenario(json_io::parse_text(scenario_to_json(s).dump()));
  auto outcome = replay_expectation(reparsed);
  CHECK_MESSAGE(outcome.reproduced, outcome.message);

  // The same inputs against the revised netlist no longer reproduce it.
  reparsed.subsystem->variant = "revised";
  CHECK_FALSE(replay_expectation(reparsed).reproduced);
}
