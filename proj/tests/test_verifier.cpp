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

#include "doctest.h"
#include "fbcheck/scenario.hpp"
#include "fbcheck/simulate.hpp"
#include "fbcheck/subsystems.hpp"
#include "fbcheck/verifier.hpp"

using namespace fbcheck;

namespace {

InputSpace small_sealedin_space(const Subject& subject) {
  InputSpace space;
  space.inputs = subject.inputs;
  std::vector<Tick> gaps{1, 2};
  space.schedules.push_back(SampleSchedule::from_gaps(TickDomain(10, 7), gaps, Duration(10),
                                                      Duration(20)));
  return space;
}

InputSpace per_tick_m(Tick horizon) {
  InputSpace space;
  space.inputs = {{"m", pb_status()}};
  space.discipline = Discipline::PerTick;
  space.schedules.push_back(SampleSchedule::periodic(TickDomain(10, horizon), 2));
  return space;
}

CheckOptions workers(int n, bool collect = false) {
  CheckOptions o;
  o.workers = n;
  o.collect_all = collect;
  return o;
}

}  // namespace

TEST_CASE("input space cardinalities") {
  auto sealed = trip_sealedin_subject(Variant::Revised, {});
  auto space = default_space("trip-sealed-in", sealed.inputs);
  CHECK(space.cardinality() == 3 * (std::uint64_t{1} << 15));
  auto first = space.at(0);
  REQUIRE(first);
  CHECK(first->inputs.at("Trip")[0] == e_Trip);

  auto pb = default_space("pushbutton", {{"m", pb_status()}});
  CHECK(pb.cardinality() == 8192);
  std::uint64_t admitted = 0;
  for (std::uint64_t i = 0; i < pb.cardinality(); ++i) admitted += pb.at(i) ? 1 : 0;
  CHECK(admitted == 288);

  // Sample-aligned cases only change at samples.
  for (std::uint64_t i = 0; i < space.cardinality(); i += 997) {
    auto c = space.at(i);
    const auto& s = space.schedules[c->schedule];
    for (const auto& [name, sig] : c->inputs) {
      for (Tick t = 1; t <= sig.horizon(); ++t) {
        if (!s.is_sample(t)) REQUIRE(sig[t] == sig[t - 1]);
      }
    }
  }
}

TEST_CASE("random filtered spaces are seeded") {
  InputSpace space;
  space.inputs = {{"m", pb_status()}};
  space.discipline = Discipline::RandomFiltered;
  space.schedules.push_back(SampleSchedule::periodic(TickDomain(10, 40), 3));
  space.random_cases = 50;
  space.seed = 9;
  auto again = space;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto a = space.at(i);
    REQUIRE(a);
    CHECK(a->inputs == again.at(i)->inputs);
    CHECK(is_filtered(a->inputs.at("m"), space.schedules[0]).filtered);
  }
  again.seed = 10;
  bool differs = false;
  for (std::uint64_t i = 0; i < 50; ++i) differs |= !(space.at(i)->inputs == again.at(i)->inputs);
  CHECK(differs);
}

TEST_CASE("cardinality above the cap is refused") {
  auto space = per_tick_m(12);
  space.cap = 1000;
  auto table = pushbutton_table(PushbuttonTable::Revised, {});
  CHECK_THROWS_AS(check_disjointness(table, space), CardinalityRefused);
}

TEST_CASE("original sealed-in fails at tick 0 under every input") {
  auto subject = trip_sealedin_subject(Variant::Original, {});
  auto space = small_sealedin_space(subject);
  auto r = check_correctness(subject, space, workers(2, true));
  REQUIRE(r.counterexample);
  CHECK(r.failures == space.cardinality());
  CHECK(r.signatures.size() == 1);
  CHECK(r.counterexample->case_index == 0);
  CHECK(r.counterexample->tick == 0);
  CHECK(r.counterexample->category == Category::Init);
  CHECK(r.counterexample->expected == 1);
  CHECK(r.counterexample->actual == 0);
  CHECK(r.replayed);
  REQUIRE(r.shrunk);
  CHECK(r.shrunk->schedule.horizon() == 0);
  CHECK(change_points(r.shrunk->inputs) == 0);

  auto probe = correctness_probe(subject);
  auto again = shrink(*r.shrunk, probe);
  CHECK(again.inputs == r.shrunk->inputs);
  CHECK(again.schedule == r.shrunk->schedule);
}

TEST_CASE("results do not depend on the worker count") {
  auto table = pushbutton_table(PushbuttonTable::Original, {});
  auto space = per_tick_m(10);
  auto one = check_disjointness(table, space, workers(1, true));
  auto four = check_disjointness(table, space, workers(4, true));
  CHECK(one.failures == four.failures);
  CHECK(one.signatures == four.signatures);
  REQUIRE(one.counterexample);
  CHECK(one.counterexample->case_index == four.counterexample->case_index);
  CHECK(one.shrunk->inputs == four.shrunk->inputs);

  auto first1 = check_disjointness(table, space, workers(1));
  auto first3 = check_disjointness(table, space, workers(3));
  CHECK(first1.counterexample->case_index == first3.counterexample->case_index);
  CHECK(first1.cases_checked == first3.cases_checked);
  CHECK(first1.cases_checked == first1.counterexample->case_index + 1);
}

TEST_CASE("spike witnesses shrink to a one-tick spike") {
  auto table = pushbutton_table(PushbuttonTable::Original, {});
  auto r = check_disjointness(table, per_tick_m(12));
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->category == Category::TableOverlap);
  REQUIRE(r.shrunk);
  const auto& m = r.shrunk->inputs.at("m");
  const Tick h = m.horizon();
  CHECK(change_points(r.shrunk->inputs) == 1);
  CHECK(r.shrunk->tick == h);
  CHECK_FALSE(r.shrunk->schedule.is_sample(h));
  CHECK(m[h] == e_NotPressed);
  CHECK(m[h - 1] == e_Pressed);

  auto probe = disjointness_probe(table);
  CHECK(replays(*r.shrunk, probe));
  auto fixed = shrink(*r.shrunk, probe);
  CHECK(fixed.inputs == r.shrunk->inputs);
}

TEST_CASE("table health of the requirement tables") {
  auto space = per_tick_m(10);
  for (auto which : {PushbuttonTable::Revised}) {
    auto table = pushbutton_table(which, {});
    CHECK(check_completeness(table, space).passed());
    CHECK(check_disjointness(table, space).passed());
  }
  auto literal = pushbutton_table(PushbuttonTable::Literal, {});
  auto gap = check_completeness(literal, space);
  REQUIRE(gap.counterexample);
  CHECK(gap.counterexample->category == Category::TableGap);
}

TEST_CASE("an incomplete table block is a consistency counterexample") {
  Netlist n;
  n.name = "partial";
  n.inputs = {{"a", ValueType::boolean()}};
  n.outputs = {{"y", ValueType::boolean()}};
  BlockInstance table;
  table.id = "tab";
  table.kind = BlockKind::Table;
  table.table_inputs = {"a"};
  table.table_rows = {{{{"a", true}}, 1}};
  n.blocks = {table};
  n.wires = {{"a", {"", "a"}, {{"tab", "a"}}}, {"y", {"tab", "out"}, {{"", "y"}}}};

  Subject subject;
  subject.name = "partial";
  subject.netlist = n;
  subject.inputs = n.inputs;
  subject.requirement = {"y", "y", ValueType::boolean(),
                         [](const SignalMap& in, const SampleSchedule&) { return in.at("a"); }};

  InputSpace space;
  space.inputs = n.inputs;
  space.discipline = Discipline::PerTick;
  space.schedules.push_back(SampleSchedule::every_tick(TickDomain(10, 3)));
  auto r = check_consistency(subject, space);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->category == Category::TableGap);
  CHECK(r.replayed);
  REQUIRE(r.shrunk);
  CHECK(r.shrunk->schedule.horizon() == 0);
}

TEST_CASE("induction formulation agrees with the direct scan") {
  for (Variant v : {Variant::Original, Variant::Revised}) {
    auto subject = trip_sealedin_subject(v, {});
    auto r = check_induction(subject, small_sealedin_space(subject));
    CHECK_MESSAGE(r.passed(), r.summary());
    auto space = small_sealedin_space(subject);
    auto c = space.at(5);
    auto verdict = induction_verdict(subject, c->inputs, space.schedules[c->schedule]);
    CHECK(verdict.direct == verdict.inductive);
    if (v == Variant::Original) CHECK(verdict.direct == 0);
    if (v == Variant::Revised) CHECK_FALSE(verdict.direct);
  }
}

TEST_CASE("reports serialize counts and counterexamples") {
  auto subject = trip_sealedin_subject(Variant::Original, {});
  auto r = check_correctness(subject, small_sealedin_space(subject));
  auto doc = result_to_json(r);
  CHECK(doc["verdict"] == "fail");
  CHECK(doc["cases_checked"] == 1);
  CHECK(doc.contains("counterexample"));
  CHECK(r.summary().find("FAIL") != std::string::npos);
}
