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
#include "fbcheck/simulate.hpp"
#include "fbcheck/subsystems.hpp"
#include "fbcheck/timing_ops.hpp"

using namespace fbcheck;

namespace {

Signal bit_signal(Tick horizon, std::uint64_t mask, Value one, Value zero) {
  return Signal::generate(horizon, [&](Tick t) { return ((mask >> t) & 1U) ? one : zero; });
}

// Sample-aligned signal from one bit per sample.
Signal aligned(const SampleSchedule& s, std::uint64_t mask, Value one, Value zero) {
  return Signal::generate(s.horizon(), [&](Tick t) {
    return ((mask >> left_sample(s, t)) & 1U) ? one : zero;
  });
}

}  // namespace

TEST_CASE("enumeration recoding") {
  auto trip = Signal(std::vector<Value>{e_Trip, e_NotTrip, e_Trip});
  auto abst = abst_parm_trip(trip);
  for (Tick t = 0; t <= 2; ++t) CHECK((abst[t] == 0) == (trip[t] == e_Trip));
  CHECK(format_value(e_pbStuck, pb_output()) == "e_pbStuck");
  CHECK(parse_value("e_Pressed", pb_status()) == e_Pressed);
}

TEST_CASE("constants are validated against delta") {
  CHECK_NOTHROW(SealedInConsts{}.validate(10));
  CHECK_THROWS(SealedInConsts{}.validate(15));
  PushbuttonConsts pb;
  pb.k_stuck = Duration(20);
  CHECK_THROWS(pb.validate(10));
  CHECK(PushbuttonConsts{}.debounce_preset() == Duration(20));
  CHECK(PushbuttonConsts{}.stuck_preset() == Duration(50));
  CHECK(SealedInConsts{}.preset() == Duration(30));
}

TEST_CASE("sealed-in requirement: table, recursion and sealing agree") {
  SealedInConsts consts;
  auto table = sealedin_req_table(consts);
  validate_table(table);
  const int samples = 4;
  std::vector<Tick> gaps{1, 2};
  for (const auto& s : enumerate_schedules(10, samples, gaps, Duration(10), Duration(20), 1)) {
    const Tick h = s.horizon();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (3 * samples)); ++mask) {
      SignalMap in{{"Any_parm_trip", aligned(s, mask & 0xF, 1, 0)},
                   {"Trip", aligned(s, (mask >> 4) & 0xF, e_Trip, e_NotTrip)},
                   {"Man_reset_req", aligned(s, (mask >> 8) & 0xF, 1, 0)}};
      auto req = trip_sealedin_req(in.at("Any_parm_trip"), in.at("Trip"), in.at("Man_reset_req"),
                                   s, consts);
      REQUIRE(evaluate_table(table, table.context(in, s), h) == req);
      REQUIRE(req[0] == 1);
      auto trip_held = held_for_i_trace(
          in.at("Trip").map([](Value v) { return v == e_Trip; }), consts.preset(), s);
      for (Tick t = 1; t <= h; ++t) {
        const bool any = in.at("Any_parm_trip")[t] != 0;
        const bool reset = in.at("Man_reset_req")[t] != 0;
        if (req[t - 1] == 1 && !(!any && reset)) REQUIRE(req[t] == 1);
        if (!any && reset) REQUIRE(req[t] == 0);
        if (any && trip_held[t]) REQUIRE(req[t] == 1);
      }
    }
  }
}

TEST_CASE("pushbutton examples") {
  PushbuttonConsts consts;
  TickDomain dom(10, 10);
  auto every = SampleSchedule::every_tick(dom);
  Simulator sim(build_pushbutton_impl(consts));

  auto idle = Signal::constant(10, e_NotPressed);
  auto out = sim.run({{"m", idle}}, every).output("f_Pushbutton");
  CHECK(out == Signal::constant(10, e_pbNotDebounced));
  CHECK(pushbutton_req(idle, every, consts, PushbuttonTable::Original) == out);

  auto held = Signal::constant(10, e_Pressed);
  out = sim.run({{"m", held}}, every).output("f_Pushbutton");
  CHECK(out == pushbutton_req(held, every, consts, PushbuttonTable::Revised));
  for (Tick t = 0; t <= 10; ++t) {
    const Value want = t < 2 ? e_pbNotDebounced : (t < 5 ? e_pbDebounced : e_pbStuck);
    CHECK(out[t] == want);
  }
}

TEST_CASE("an unsampled spike splits implementation and original table") {
  PushbuttonConsts consts;
  TickDomain dom(10, 8);
  auto s = SampleSchedule::periodic(dom, 2);
  auto m = Signal::generate(8, [](Tick t) { return t == 5 ? e_NotPressed : e_Pressed; });
  auto out = simulate(build_pushbutton_impl(consts), {{"m", m}}, s).output("f_Pushbutton");
  auto table = pushbutton_table(PushbuttonTable::Original, consts);
  auto rows = matching_rows(table, table.context({{"m", m}}, s), 5);
  CHECK(rows == std::vector<int>{0, 2});
  CHECK(out[5] == e_pbDebounced);
  CHECK(out[5] != e_pbNotDebounced);
  CHECK_THROWS_AS(pushbutton_req(m, s, consts, PushbuttonTable::Original), TableFaultError);
  CHECK(pushbutton_req(m, s, consts, PushbuttonTable::Revised) == out);
}

TEST_CASE("pushbutton staging and table shapes over per-tick inputs") {
  PushbuttonConsts consts;
  constexpr Tick horizon = 10;
  TickDomain dom(10, horizon);
  auto s = SampleSchedule::periodic(dom, 2);
  auto revised = pushbutton_table(PushbuttonTable::Revised, consts);
  auto literal = pushbutton_table(PushbuttonTable::Literal, consts);
  Simulator sim(build_pushbutton_impl(consts));
  bool literal_gap = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (horizon + 1)); ++mask) {
    SignalMap in{{"m", bit_signal(horizon, mask, e_Pressed, e_NotPressed)}};
    auto ctx = revised.context(in, s);
    for (Tick t = 0; t <= horizon; ++t) {
      if (ctx.at("stuck")[t]) REQUIRE(ctx.at("debounced")[t]);
      REQUIRE(matching_rows(revised, ctx, t).size() == 1);
      if (matching_rows(literal, ctx, t).empty()) {
        literal_gap = true;
        REQUIRE(ctx.at("pressed")[t] == 1);
        REQUIRE(ctx.at("debounced")[t] == 0);
      }
    }
    REQUIRE(sim.run(in, s).output("f_Pushbutton") ==
            evaluate_table(revised, ctx, horizon));
  }
  CHECK(literal_gap);
}

TEST_CASE("timer tables") {
  TickDomain dom(10, 6);
  auto s = SampleSchedule::periodic(dom, 2);
  // IN drops between samples while the frozen timer is positive.
  auto in = Signal::generate(6, [](Tick t) { return t <= 4; });
  auto literal = ton_et_literal_table(Duration(60));
  auto ctx = literal.context({{"IN", in}}, s);
  CHECK(matching_rows(literal, ctx, 5) == std::vector<int>{1, 2});
  auto fixed = ton_et_table(Duration(60));
  CHECK(matching_rows(fixed, fixed.context({{"IN", in}}, s), 5) == std::vector<int>{2});
  auto q = ton_q_table(Duration(40));
  auto qs = evaluate_table(q, q.context({{"IN", in}}, s), 6);
  CHECK(qs.values() == std::vector<Value>{0, 0, 0, 0, 1, 1, 0});
}
