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
#include "fbcheck/time_core.hpp"

using namespace fbcheck;

namespace {

Trajectory<bool> bits(Tick horizon, std::uint64_t mask) {
  return Trajectory<bool>::generate(horizon, [&](Tick t) { return ((mask >> t) & 1U) != 0; });
}

DomainError::Kind kind_of(auto&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.kind();
  }
  FAIL("expected DomainError");
  return DomainError::Kind::BadArgument;
}

}  // namespace

TEST_CASE("tick navigation") {
  TickDomain dom(10, 5);
  CHECK(pre(dom, 3) == 2);
  CHECK(next(dom, 3) == 4);
  CHECK(rank(dom, 4) == 4);
  CHECK(is_init(0));
  CHECK(kind_of([&] { pre(dom, 0); }) == DomainError::Kind::NotInit);
  CHECK(kind_of([&] { next(dom, 5); }) == DomainError::Kind::PastHorizon);
  CHECK(kind_of([&] { next(dom, 6); }) == DomainError::Kind::OutOfRange);

  auto nav = navigate(dom, 0);
  CHECK(nav.init);
  CHECK_FALSE(nav.pre);
  CHECK(nav.next == 1);
  nav = navigate(dom, 5);
  CHECK_FALSE(nav.next);

  for (Tick t = 1; t <= dom.horizon(); ++t) {
    CHECK(pre(dom, next(dom, t - 1)) == t - 1);
    CHECK(next(dom, pre(dom, t)) == t);
  }
}

TEST_CASE("durations are delta multiples") {
  TickDomain dom(10, 5);
  CHECK(dom.duration(30).value == 30);
  CHECK(dom.to_ticks(Duration(30)) == 3);
  CHECK(kind_of([&] { dom.duration(25); }) == DomainError::Kind::Misaligned);
  CHECK(kind_of([&] { dom.duration(-10); }) == DomainError::Kind::BadArgument);
  CHECK(kind_of([&] { (void)(Duration(10) - Duration(20)); }) == DomainError::Kind::BadArgument);
  CHECK_THROWS_AS(TickDomain(0, 3), DomainError);
}

TEST_CASE("trajectory from change list") {
  std::vector<std::pair<Tick, int>> changes{{0, 1}, {2, 5}, {4, 7}};
  auto p = Trajectory<int>::from_changes(5, changes);
  CHECK(p.values() == std::vector<int>{1, 1, 5, 5, 7, 7});
  std::vector<std::pair<Tick, int>> late{{1, 1}};
  CHECK_THROWS_AS(Trajectory<int>::from_changes(5, late), DomainError);
  std::vector<std::pair<Tick, int>> beyond{{0, 1}, {9, 2}};
  CHECK_THROWS_AS(Trajectory<int>::from_changes(5, beyond), DomainError);
  CHECK_THROWS_AS(p.at(6), DomainError);
}

TEST_CASE("left sample") {
  TickDomain dom(10, 9);
  SampleSchedule s(dom, {0, 2, 5, 7}, Duration(20), Duration(30));
  CHECK(left_sample(s, 0) == 0);
  CHECK(left_sample(s, 1) == 0);
  CHECK(left_sample(s, 4) == 1);
  CHECK(left_sample(s, 9) == 3);
  for (SampleIndex n = 0; n < s.size(); ++n) CHECK(left_sample(s, s[n]) == n);
  for (Tick t = 1; t <= dom.horizon(); ++t) CHECK(left_sample(s, t - 1) <= left_sample(s, t));
}

TEST_CASE("schedule construction") {
  TickDomain dom(10, 12);
  CHECK_THROWS_AS(SampleSchedule(dom, {1, 3}, Duration(20), Duration(30)), DomainError);
  SampleSchedule late(dom, {1, 3}, Duration(20), Duration(30), ScheduleOptions{false});
  CHECK(left_sample(late, 2) == 0);
  CHECK_THROWS_AS(left_sample(late, 0), DomainError);
  CHECK_THROWS_AS(SampleSchedule(dom, {4, 6}, Duration(20), Duration(30), ScheduleOptions{false}),
                  DomainError);
  CHECK_THROWS_AS(SampleSchedule(dom, {0, 2, 20}, Duration(20), Duration(30)), DomainError);
  CHECK_THROWS_AS(SampleSchedule(dom, {0, 2}, Duration(25), Duration(30)), DomainError);

  auto every = SampleSchedule::every_tick(dom);
  CHECK(every.size() == 13);
  auto two = SampleSchedule::periodic(dom, 2);
  CHECK(two.samples() == std::vector<Tick>{0, 2, 4, 6, 8, 10, 12});
  CHECK(two.truncated(5).samples() == std::vector<Tick>{0, 2, 4});
}

TEST_CASE("schedule rejects gaps outside [tmin, tmax]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> gap(1, 6);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Tick> samples{0};
    bool in_range = true;
    for (int i = 0; i < 5; ++i) {
      const int g = gap(rng);
      if (g < 2 || g > 4) in_range = false;
      samples.push_back(samples.back() + g);
    }
    TickDomain dom(10, samples.back());
    auto build = [&] { SampleSchedule(dom, samples, Duration(20), Duration(40)); };
    if (in_range) {
      CHECK_NOTHROW(build());
    } else {
      CHECK_THROWS_AS(build(), DomainError);
    }
  }
}

TEST_CASE("enumerate schedules") {
  std::vector<Tick> gaps{1, 2};
  auto all = enumerate_schedules(10, 3, gaps, Duration(10), Duration(20), 1);
  REQUIRE(all.size() == 4);
  CHECK(all[0].samples() == std::vector<Tick>{0, 1, 2});
  CHECK(all[0].horizon() == 3);
  CHECK(all[3].samples() == std::vector<Tick>{0, 2, 4});
}

TEST_CASE("is_filtered examples") {
  TickDomain dom(10, 10);
  auto s = SampleSchedule::periodic(dom, 3);  // tmax 3 ticks
  REQUIRE(s.tmax_ticks() == 3);
  CHECK(is_filtered(Trajectory<bool>::constant(10, true), s).filtered);

  auto spike = Trajectory<bool>::generate(10, [](Tick t) { return t == 4; });
  auto v = is_filtered(spike, s);
  CHECK_FALSE(v.filtered);
  CHECK(v.witness == 4);

  auto once = Trajectory<bool>::generate(10, [](Tick t) { return t >= 4; });
  CHECK(is_filtered(once, s).filtered);

  auto early = Trajectory<bool>::generate(10, [](Tick t) { return t >= 2; });
  v = is_filtered(early, s);
  CHECK_FALSE(v.filtered);
  CHECK(v.witness == 2);
}

namespace {

// Direct reading of the two clauses.
bool filtered_oracle(const Trajectory<bool>& p, Tick window) {
  const Tick h = p.horizon();
  for (Tick t = 0; t <= std::min(h, window); ++t) {
    if (p[t] != p[0]) return false;
  }
  for (Tick t0 = 0; t0 + 1 <= h; ++t0) {
    if (p[t0] == p[t0 + 1]) continue;
    for (Tick t = t0 + 1; t <= std::min(h, t0 + window); ++t) {
      if (p[t] != p[t0 + 1]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("filtered signals change at most once per sample interval") {
  // Exhaustive over horizon 14 for two sampling periods. A filtered signal may
  // change between samples, but only once, and the sample that closes the
  // interval already sees the new value.
  constexpr Tick horizon = 14;
  for (Tick period : {2, 3}) {
    TickDomain dom(10, horizon);
    auto sched = SampleSchedule::periodic(dom, period);
    std::uint64_t filtered = 0;
    bool inter_sample_change = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (horizon + 1)); ++mask) {
      auto p = bits(horizon, mask);
      const bool f = is_filtered(p, sched).filtered;
      REQUIRE(f == filtered_oracle(p, sched.tmax_ticks()));
      if (!f) continue;
      ++filtered;
      for (SampleIndex n = 0; n + 1 < sched.size(); ++n) {
        int changes = 0;
        for (Tick t = sched[n] + 1; t <= sched[n + 1]; ++t) {
          if (p[t] != p[t - 1]) {
            ++changes;
            if (t != sched[n + 1]) inter_sample_change = true;
          }
        }
        REQUIRE(changes <= 1);
        if (changes == 1) REQUIRE(p[sched[n + 1]] != p[sched[n]]);
      }
    }
    CHECK(filtered > 0);
    // The literal "constant between samples" reading does not hold: filtered
    // signals can switch strictly inside an interval.
    CHECK(inter_sample_change);
  }
}
