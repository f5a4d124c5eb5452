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

#include <random>

#include "doctest.h"
#include "fbcheck/json_io.hpp"
#include "fbcheck/simulate.hpp"
#include "fbcheck/subsystems.hpp"

using namespace fbcheck;

namespace {

PortRef ext(std::string name) { return {"", std::move(name)}; }
PortRef pin(std::string block, std::string port) { return {std::move(block), std::move(port)}; }

Netlist identity() {
  Netlist n;
  n.name = "identity";
  n.inputs = {{"x", ValueType::boolean()}};
  n.outputs = {{"y", ValueType::boolean()}};
  n.wires = {{"x", ext("x"), {ext("y")}}};
  return n;
}

Signal random_bits(std::mt19937_64& rng, Tick horizon) {
  std::bernoulli_distribution coin(0.5);
  return Signal::generate(horizon, [&](Tick) { return coin(rng) ? 1 : 0; });
}

SignalMap sealedin_inputs(Tick horizon, bool any, bool trip, bool reset) {
  return {{"Any_parm_trip", Signal::constant(horizon, any)},
          {"Trip", Signal::constant(horizon, trip)},
          {"Man_reset_req", Signal::constant(horizon, reset)}};
}

}  // namespace

TEST_CASE("validation accepts the case-study netlists") {
  for (Variant v : {Variant::Original, Variant::Revised}) {
    auto report = validate_netlist(build_trip_sealedin_impl(v, {}));
    CHECK_MESSAGE(report.ok(), report.to_string());
  }
  CHECK(validate_netlist(build_pushbutton_impl({})).ok());
  CHECK(validate_netlist(Netlist{}).ok());
  CHECK(validate_netlist(identity()).ok());
}

TEST_CASE("removing the feedback marker is an algebraic loop") {
  auto n = build_trip_sealedin_impl(Variant::Original, {});
  auto* fb = n.find_wire("Trip_SealedIn_fb");
  REQUIRE(fb);
  fb->feedback = false;
  auto report = validate_netlist(n);
  REQUIRE(report.has(Issue::Kind::AlgebraicLoop));
  const auto text = report.to_string();
  CHECK(text.find("disj_seal (DISJ)") != std::string::npos);
  CHECK(text.find("rs_sealin (RS)") != std::string::npos);
  CHECK_THROWS_AS(Simulator{n}, InvalidNetlist);
}

TEST_CASE("validation reports each defect") {
  auto n = build_trip_sealedin_impl(Variant::Original, {});
  n.find_wire("Trip_SealedIn_fb")->init.reset();
  CHECK(validate_netlist(n).has(Issue::Kind::MissingFeedbackInit));

  n = build_trip_sealedin_impl(Variant::Original, {});
  n.find_wire("w5")->sinks.clear();
  CHECK(validate_netlist(n).has(Issue::Kind::UnconnectedSink));

  n = build_trip_sealedin_impl(Variant::Original, {});
  n.find_wire("w2")->sinks.push_back(pin("conj_reset", "in1"));
  CHECK(validate_netlist(n).has(Issue::Kind::MultiplyDriven));

  n = build_pushbutton_impl({});
  n.find_wire("et_debounce")->sinks.push_back(pin("sel_stuck", "g"));
  auto report = validate_netlist(n);
  CHECK(report.has(Issue::Kind::TypeMismatch));

  n = identity();
  n.wires[0].sinks = {pin("nowhere", "in")};
  CHECK(validate_netlist(n).has(Issue::Kind::UnknownPort));
}

TEST_CASE("identity netlist copies its input") {
  std::mt19937_64 rng(1);
  TickDomain dom(10, 15);
  auto s = SampleSchedule::every_tick(dom);
  auto x = random_bits(rng, 15);
  auto trace = simulate(identity(), {{"x", x}}, s);
  CHECK(trace.output("y") == x);
}

TEST_CASE("simulation examples for the sealed-in netlists") {
  TickDomain dom(10, 10);
  auto s = SampleSchedule::every_tick(dom);
  // Revised netlist, all-false inputs: true at tick 0 and then held by the latch.
  auto revised = simulate(build_trip_sealedin_impl(Variant::Revised, {}),
                          sealedin_inputs(10, false, false, false), s);
  for (Tick t = 0; t <= 10; ++t) CHECK(revised.output("Trip_SealedIn")[t] == 1);
  auto original = simulate(build_trip_sealedin_impl(Variant::Original, {}),
                           sealedin_inputs(10, false, false, false), s);
  for (Tick t = 0; t <= 10; ++t) CHECK(original.output("Trip_SealedIn")[t] == 0);

  // Reset from tick 4 clears the revised output from then on.
  auto in = sealedin_inputs(10, false, false, false);
  in.insert_or_assign("Man_reset_req", Signal::generate(10, [](Tick t) { return t >= 4; }));
  auto reset = simulate(build_trip_sealedin_impl(Variant::Revised, {}), in, s);
  for (Tick t = 0; t <= 10; ++t) CHECK(reset.output("Trip_SealedIn")[t] == (t < 4 ? 1 : 0));
}

TEST_CASE("simulation is deterministic, causal and honours the unit delay") {
  std::mt19937_64 rng(42);
  constexpr Tick horizon = 20;
  TickDomain dom(10, horizon);
  auto s = SampleSchedule::periodic(dom, 2);
  for (Variant v : {Variant::Original, Variant::Revised}) {
    Simulator sim(build_trip_sealedin_impl(v, {}));
    for (int trial = 0; trial < 200; ++trial) {
      SignalMap in{{"Any_parm_trip", random_bits(rng, horizon)},
                   {"Trip", random_bits(rng, horizon)},
                   {"Man_reset_req", random_bits(rng, horizon)}};
      auto a = sim.run(in, s);
      REQUIRE(a.wires == sim.run(in, s).wires);

      const auto& fb = a.wire("Trip_SealedIn_fb");
      const auto& src = a.wire("Trip_SealedIn");
      REQUIRE(fb[0] == 0);
      for (Tick t = 1; t <= horizon; ++t) REQUIRE(fb[t] == src[t - 1]);

      const Tick k = std::uniform_int_distribution<Tick>(0, horizon - 1)(rng);
      SignalMap edited = in;
      for (auto& [name, sig] : edited) {
        auto values = sig.values();
        for (Tick t = k + 1; t <= horizon; ++t) values[t] = 1 - values[t];
        sig = Signal(values);
      }
      auto b = sim.run(edited, s);
      for (const auto& [name, sig] : a.wires) {
        for (Tick t = 0; t <= k; ++t) REQUIRE(b.wire(name)[t] == sig[t]);
      }
    }
  }
}

TEST_CASE("simulation rejects bad inputs and misaligned presets") {
  TickDomain dom(10, 5);
  auto s = SampleSchedule::every_tick(dom);
  CHECK_THROWS(simulate(identity(), {}, s));
  CHECK_THROWS(simulate(identity(), {{"x", Signal::constant(3, 0)}}, s));
  SealedInConsts odd;
  odd.k_sealindelay = Duration(45);
  TickDomain coarse(10, 5);
  CHECK_THROWS_AS(simulate(build_trip_sealedin_impl(Variant::Original, odd),
                           sealedin_inputs(5, false, false, false),
                           SampleSchedule::every_tick(coarse)),
                  DomainError);
}

TEST_CASE("table block faults abort with tick and block") {
  Netlist n;
  n.inputs = {{"a", ValueType::boolean()}};
  n.outputs = {{"y", ValueType::boolean()}};
  BlockInstance table;
  table.id = "tab";
  table.kind = BlockKind::Table;
  table.table_inputs = {"a"};
  table.table_rows = {{{{"a", true}}, 1}};
  n.blocks = {table};
  n.wires = {{"a", ext("a"), {pin("tab", "a")}}, {"y", pin("tab", "out"), {ext("y")}}};
  TickDomain dom(10, 4);
  auto in = Signal::generate(4, [](Tick t) { return t < 2; });
  try {
    simulate(n, {{"a", in}}, SampleSchedule::every_tick(dom));
    FAIL("expected a fault");
  } catch (const EvaluationFault& e) {
    CHECK(e.tick() == 2);
    CHECK(e.block() == "tab");
    CHECK(e.table_fault() == TableFault::Kind::Gap);
  }
}

TEST_CASE("netlist documents round trip") {
  std::vector<Netlist> all{build_trip_sealedin_impl(Variant::Original, {}),
                           build_trip_sealedin_impl(Variant::Revised, {}),
                           build_pushbutton_impl({}), identity()};
  for (const auto& n : all) {
    auto doc = json_io::netlist_to_json(n);
    auto back = json_io::netlist_from_json(doc);
    CHECK(back == n);
    CHECK(json_io::netlist_to_json(back).dump() == doc.dump());
  }
}

TEST_CASE("json readers are strict") {
  CHECK_THROWS_AS(json_io::parse_text("{\"a\": }"), ConfigError);
  try {
    json_io::parse_text("{\n  \"a\": ]\n}", "x.json");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("x.json:2:") != std::string::npos);
  }
  auto doc = json_io::netlist_to_json(identity());
  doc["colour"] = "blue";
  CHECK_THROWS_AS(json_io::netlist_from_json(doc), ConfigError);

  auto sig = json_io::parse_text("[[0, false], [3, true]]");
  auto s = json_io::signal_from_json(sig, ValueType::boolean(), 5, "x");
  CHECK(s.values() == std::vector<Value>{0, 0, 0, 1, 1, 1});
  CHECK(json_io::signal_to_json(s, ValueType::boolean()).dump() == sig.dump());
  CHECK_THROWS_AS(json_io::signal_from_json(json_io::parse_text("[[1, true]]"),
                                            ValueType::boolean(), 5, "x"),
                  ConfigError);
  CHECK_THROWS_AS(json_io::signal_from_json(json_io::parse_text("[[0, true], [0, false]]"),
                                            ValueType::boolean(), 5, "x"),
                  ConfigError);
  CHECK(json_io::value_from_json("e_pbStuck", pb_output(), "x") == e_pbStuck);
  CHECK_THROWS_AS(json_io::value_from_json("e_Nope", pb_output(), "x"), ConfigError);
  CHECK_THROWS_AS(json_io::value_from_json(-10, ValueType::duration(), "x"), ConfigError);
}

TEST_CASE("shipped netlist documents match the builders") {
  const std::string dir = std::string(FBCHECK_SOURCE_DIR) + "/netlists/";
  CHECK(json_io::netlist_from_json(json_io::read_file(dir + "trip_sealed_in_original.json")) ==
        build_trip_sealedin_impl(Variant::Original, {}));
  CHECK(json_io::netlist_from_json(json_io::read_file(dir + "trip_sealed_in_revised.json")) ==
        build_trip_sealedin_impl(Variant::Revised, {}));
  CHECK(json_io::netlist_from_json(json_io::read_file(dir + "pushbutton.json")) ==
        build_pushbutton_impl({}));
}
