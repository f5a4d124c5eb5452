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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "fbcheck/blocks.hpp"
#include "fbcheck/scenario.hpp"
#include "fbcheck/subsystems.hpp"
#include "fbcheck/timing_ops.hpp"
#include "fbcheck/verifier.hpp"

using namespace fbcheck;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string source(const std::string& rel) { return std::string(FBCHECK_SOURCE_DIR) + "/" + rel; }

// 1. held_for_i <=> timer_i >= d over every sample valuation and schedule.
Outcome timer_general() {
  const auto start = Clock::now();
  const std::vector<Tick> gaps{2, 3, 4};
  std::uint64_t cases = 0, violations = 0;
  for (int n = 1; n <= 8; ++n) {
    // Tail of tmax - 1 ticks exercises the ticks after the last sample.
    for (const auto& s : enumerate_schedules(10, n, gaps, Duration(20), Duration(40), 3)) {
      const Tick h = s.horizon();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto p = Trajectory<bool>::generate(
            h, [&](Tick t) { return ((mask >> left_sample(s, t)) & 1U) != 0; });
        for (std::int64_t k = 1; k <= 5; ++k) {
          const Duration d(10 * k);
          auto held = held_for_i_trace(p, d, s);
          auto timer = timer_i_trace(p, s, d);
          ++cases;
          for (Tick t = 0; t <= h; ++t) {
            if (held[t] != (timer[t] >= d)) {
              ++violations;
              break;
            }
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << cases << " (valuation, schedule, duration) cases, " << violations << " violations, "
     << secs << " s";
  return {violations == 0 && secs < 60.0, os.str()};
}

// 2. The original sealed-in netlist diverges at tick 0 under every input.
Outcome init_bug() {
  auto subject = trip_sealedin_subject(Variant::Original, {});
  auto space = default_space("trip-sealed-in", subject.inputs);
  CheckOptions opts;
  opts.collect_all = true;
  auto r = check_correctness(subject, space, opts);
  std::ostringstream os;
  if (!r.counterexample) return {false, "no counterexample found"};
  const auto& c = *r.counterexample;
  const bool every = r.failures == space.cardinality() && r.signatures.size() == 1;
  const bool shape = c.tick == 0 && c.expected == 1 && c.actual == 0 && c.category == Category::Init;
  const bool shrunk = r.shrunk && r.shrunk->schedule.horizon() == 0;
  os << r.failures << "/" << space.cardinality() << " cases fail, " << r.signatures.size()
     << " distinct signature(s): " << c.describe() << "; replayed " << (r.replayed ? "yes" : "no")
     << "; shrunk horizon " << (r.shrunk ? std::to_string(r.shrunk->schedule.horizon()) : "-");
  return {every && shape && shrunk && r.replayed, os.str()};
}

// 3. The revised netlist is consistent and correct over the sample-aligned space.
Outcome revised_passes() {
  const auto start = Clock::now();
  auto subject = trip_sealedin_subject(Variant::Revised, {});
  auto space = default_space("trip-sealed-in", subject.inputs);
  auto cons = check_consistency(subject, space);
  auto corr = check_correctness(subject, space);
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << space.schedules.size() << " schedules x " << space.cardinality() / space.schedules.size()
     << " valuations; consistency " << (cons.passed() ? "pass" : "fail") << " ("
     << cons.cases_checked << " cases), correctness " << (corr.passed() ? "pass" : "fail") << " ("
     << corr.cases_checked << " cases), " << secs << " s";
  const bool ok = cons.passed() && corr.passed() && space.schedules.size() >= 3 &&
                  corr.cases_checked == space.cardinality() &&
                  space.cardinality() / space.schedules.size() == (1U << 15) && secs < 300.0;
  return {ok, os.str()};
}

// 4. Spikes break the original table; filtering restores the revised design.
Outcome spike_dichotomy() {
  InputSpace raw;
  raw.inputs = {{"m", pb_status()}};
  raw.discipline = Discipline::PerTick;
  raw.schedules = {SampleSchedule::periodic(TickDomain(10, 12), 2)};
  auto original = check_disjointness(pushbutton_table(PushbuttonTable::Original, {}), raw);

  auto filtered = default_space("pushbutton", raw.inputs);
  auto revised = check_disjointness(pushbutton_table(PushbuttonTable::Revised, {}), filtered);
  auto subject = pushbutton_subject(PushbuttonTable::Revised, {});
  auto correct = check_correctness(subject, filtered);

  std::ostringstream os;
  bool spike = false;
  if (original.shrunk) {
    const auto& c = *original.shrunk;
    spike = c.category == Category::TableOverlap && !c.schedule.is_sample(c.tick) &&
            change_points(c.inputs) == 1;
    os << "per-tick: " << c.describe() << "; ";
  } else {
    os << "per-tick: no overlap found; ";
  }
  os << "filtered (" << revised.cases_checked << " admitted of " << filtered.cardinality()
     << "): revised disjointness " << (revised.passed() ? "pass" : "fail")
     << ", netlist correctness " << (correct.passed() ? "pass" : "fail");
  return {spike && revised.passed() && correct.passed(), os.str()};
}

// 5. The on-delay waveform and its byte-identical diagram.
Outcome waveform() {
  auto s = load_scenario(source("scenarios/ton_waveform.json"));
  auto run = run_scenario(s);
  const auto& in = run.trace.wire("IN");
  const auto& q = run.trace.wire("Q");
  const auto& et = run.trace.wire("ET");
  const Tick pt = 4;
  std::vector<Tick> rises, falls;
  for (Tick t = 1; t <= in.horizon(); ++t) {
    if (in[t] && !in[t - 1]) rises.push_back(t);
    if (!in[t] && in[t - 1]) falls.push_back(t);
  }
  if (rises.size() != 3 || falls.size() != 3) return {false, "unexpected input waveform"};
  bool ok = true;
  for (Tick t = 0; t <= q.horizon(); ++t) {
    const bool want =
        (t >= rises[0] + pt && t < falls[0]) || (t >= rises[2] + pt && t < falls[2]);
    ok = ok && (q[t] != 0) == want;
    // Ramp while enabled, hold at the preset, zero when disabled.
    Value want_et = 0;
    for (std::size_t i = 0; i < rises.size(); ++i) {
      if (t >= rises[i] && t < falls[i]) want_et = 10 * std::min<Tick>(t - rises[i], pt);
    }
    ok = ok && et[t] == want_et;
  }
  std::ifstream golden(source("tests/golden/ton_waveform.txt"), std::ios::binary);
  std::ostringstream expected;
  expected << golden.rdbuf();
  const bool same = render_diagram(run.lanes, s.schedule) == expected.str();
  std::ostringstream os;
  os << "Q on [" << rises[0] + pt << "," << falls[0] << ") and [" << rises[2] + pt << ","
     << falls[2] << "), ET ramp-and-hold " << (ok ? "matches" : "differs") << ", diagram "
     << (same ? "identical to golden" : "differs from golden");
  return {ok && same, os.str()};
}

// 6. Sampled timer against the idealized one at every-tick sampling.
Outcome bridge() {
  constexpr Tick horizon = 11;  // 12 ticks
  TickDomain dom(10, horizon);
  auto every = SampleSchedule::every_tick(dom);
  std::uint64_t cases = 0, mismatches = 0;
  for (std::int64_t k = 1; k <= 5; ++k) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (horizon + 1)); ++mask) {
      auto in = Trajectory<bool>::generate(horizon, [&](Tick t) { return ((mask >> t) & 1U) != 0; });
      auto a = ton(in, Duration(10 * k), every);
      auto b = ton_ideal(in, Duration(10 * k), dom);
      ++cases;
      if (!(a.q == b.q) || !(a.et == b.et)) ++mismatches;
    }
  }
  std::ostringstream os;
  os << cases << " inputs over PT = 1..5 delta, " << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

// 7. Completeness and disjointness of the requirement tables.
Outcome table_health() {
  InputSpace ton_space;
  ton_space.inputs = {{"IN", ValueType::boolean()}};
  ton_space.discipline = Discipline::PerTick;
  ton_space.schedules = {SampleSchedule::every_tick(TickDomain(10, 10)),
                         SampleSchedule::periodic(TickDomain(10, 10), 2)};
  const Duration pt(30);
  auto healthy = [&](const TableSpec& t, const InputSpace& space) {
    return check_completeness(t, space).passed() && check_disjointness(t, space).passed();
  };
  const bool q_ok = healthy(ton_q_table(pt), ton_space);
  auto literal = check_disjointness(ton_et_literal_table(pt), ton_space);
  const bool et_ok = healthy(ton_et_table(pt), ton_space);
  auto sealed_space =
      default_space("trip-sealed-in", trip_sealedin_subject(Variant::Revised, {}).inputs);
  const bool req_ok = healthy(sealedin_req_table({}), sealed_space);

  std::ostringstream os;
  os << "ton-q " << (q_ok ? "healthy" : "unhealthy") << "; ton-et-literal "
     << (literal.shrunk ? literal.shrunk->describe() : "no overlap found") << "; ton-et "
     << (et_ok ? "healthy" : "unhealthy") << "; sealed-in REQ "
     << (req_ok ? "healthy" : "unhealthy");
  const bool flagged = literal.shrunk && literal.shrunk->category == Category::TableOverlap;
  return {q_ok && flagged && et_ok && req_ok, os.str()};
}

// 8. Direct scan and base-plus-step agree on the revised netlist.
Outcome induction() {
  auto subject = trip_sealedin_subject(Variant::Revised, {});
  auto space = default_space("trip-sealed-in", subject.inputs);
  auto r = check_induction(subject, space);
  std::ostringstream os;
  os << r.summary();
  return {r.passed() && r.cases_checked == space.cardinality(), os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"timer equivalence (held_for_i vs timer_i)", timer_general},
      {"initialization bug in the original sealed-in netlist", init_bug},
      {"revised sealed-in netlist is consistent and correct", revised_passes},
      {"spike dichotomy for the pushbutton", spike_dichotomy},
      {"on-delay waveform golden diagram", waveform},
      {"sampled timer matches idealized timer", bridge},
      {"requirement table healthiness", table_health},
      {"induction cross-check", induction},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s - %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
