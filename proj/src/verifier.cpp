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

#include "fbcheck/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace fbcheck {

std::string to_string(Discipline d) {
  switch (d) {
    case Discipline::SampleAligned:
      return "sample-aligned";
    case Discipline::PerTick:
      return "per-tick";
    case Discipline::Filtered:
      return "filtered";
    case Discipline::RandomFiltered:
      return "random-filtered";
  }
  return "?";
}

Discipline parse_discipline(std::string_view text) {
  for (auto d : {Discipline::SampleAligned, Discipline::PerTick, Discipline::Filtered,
                 Discipline::RandomFiltered}) {
    if (text == to_string(d)) return d;
  }
  throw std::invalid_argument("unknown discipline '" + std::string(text) + "'");
}

std::string to_string(Category c) {
  switch (c) {
    case Category::Init:
      return "init";
    case Category::SustainedTiming:
      return "sustained-timing";
    case Category::TableOverlap:
      return "table-overlap";
    case Category::TableGap:
      return "table-gap";
    case Category::Other:
      return "other";
  }
  return "?";
}

Category parse_category(std::string_view text) {
  for (auto c : {Category::Init, Category::SustainedTiming, Category::TableOverlap,
                 Category::TableGap, Category::Other}) {
    if (text == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown category '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Input spaces

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t radix(const ExternalPort& port) {
  const auto card = port.type.cardinality();
  if (card == 0) {
    throw std::invalid_argument("input '" + port.name + "' of type " + port.type.name() +
                                " cannot be enumerated");
  }
  return card;
}

int positions(Discipline d, const SampleSchedule& s) {
  return d == Discipline::SampleAligned ? s.size() : s.horizon() + 1;
}

bool in_domain(const Signal& s, const ValueType& type) {
  const auto card = static_cast<Value>(type.cardinality());
  if (card == 0) return true;
  return std::all_of(s.values().begin(), s.values().end(),
                     [card](Value v) { return v >= 0 && v < card; });
}

}  // namespace

std::uint64_t InputSpace::cases_for(std::size_t schedule) const {
  if (discipline == Discipline::RandomFiltered) return random_cases;
  std::uint64_t n = 1;
  const int count = positions(discipline, schedules[schedule]);
  for (int p = 0; p < count; ++p) {
    for (const auto& in : inputs) n = saturating_mul(n, radix(in));
  }
  return n;
}

std::uint64_t InputSpace::cardinality() const {
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < schedules.size(); ++s) {
    const auto n = cases_for(s);
    total = n > std::numeric_limits<std::uint64_t>::max() - total
                ? std::numeric_limits<std::uint64_t>::max()
                : total + n;
  }
  if (total > cap) throw CardinalityRefused(total, cap);
  return total;
}

std::optional<InputSpace::Case> InputSpace::at(std::uint64_t index) const {
  Case c;
  c.index = index;
  std::uint64_t local = index;
  while (c.schedule < schedules.size() && local >= cases_for(c.schedule)) {
    local -= cases_for(c.schedule);
    ++c.schedule;
  }
  if (c.schedule == schedules.size()) throw std::out_of_range("case index beyond the space");
  const auto& schedule = schedules[c.schedule];
  const Tick horizon = schedule.horizon();

  if (discipline == Discipline::RandomFiltered) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    const Tick window = schedule.tmax_ticks();
    for (const auto& in : inputs) {
      const auto card = radix(in);
      std::vector<Value> v(static_cast<std::size_t>(horizon) + 1);
      v[0] = static_cast<Value>(rng() % card);
      Tick last_change = 0;
      for (Tick t = 1; t <= horizon; ++t) {
        v[static_cast<std::size_t>(t)] = v[static_cast<std::size_t>(t) - 1];
        const bool may_change = t > window && t - last_change >= window;
        if (may_change && rng() % static_cast<std::uint64_t>(window + 1) == 0) {
          v[static_cast<std::size_t>(t)] =
              (v[static_cast<std::size_t>(t)] + 1 + static_cast<Value>(rng() % (card - 1))) %
              static_cast<Value>(card);
          last_change = t;
        }
      }
      c.inputs.emplace(in.name, Signal(std::move(v)));
    }
    return c;
  }

  const int count = positions(discipline, schedule);
  std::vector<std::vector<Value>> digits(inputs.size(), std::vector<Value>(count));
  for (int p = 0; p < count; ++p) {
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const auto r = radix(inputs[k]);
      digits[k][static_cast<std::size_t>(p)] = static_cast<Value>(local % r);
      local /= r;
    }
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    Signal s;
    if (discipline == Discipline::SampleAligned) {
      s = Signal::generate(horizon, [&](Tick t) {
        const Tick first = schedule[0];
        const SampleIndex n = t < first ? 0 : left_sample(schedule, t);
        return digits[k][static_cast<std::size_t>(n)];
      });
    } else {
      s = Signal(std::move(digits[k]));
    }
    if (discipline == Discipline::Filtered && !is_filtered(s, schedule)) return std::nullopt;
    c.inputs.emplace(inputs[k].name, std::move(s));
  }
  return c;
}

bool InputSpace::admits(const SignalMap& in, const SampleSchedule& schedule) const {
  for (const auto& port : inputs) {
    auto it = in.find(port.name);
    if (it == in.end() || it->second.horizon() != schedule.horizon()) return false;
    const auto& s = it->second;
    if (!in_domain(s, port.type)) return false;
    switch (discipline) {
      case Discipline::SampleAligned:
        for (Tick t = 1; t <= s.horizon(); ++t) {
          if (s[t] != s[t - 1] && !schedule.is_sample(t)) return false;
        }
        break;
      case Discipline::Filtered:
      case Discipline::RandomFiltered:
        if (!is_filtered(s, schedule)) return false;
        break;
      case Discipline::PerTick:
        break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Counterexamples and results

namespace {

std::string show(const std::optional<Value>& v, const ValueType& type) {
  if (!v) return "-";
  if (type.kind == ValueKind::Bool) return *v != 0 ? "true" : "false";
  return format_value(*v, type);
}

}  // namespace

std::string Counterexample::signature() const {
  return check + "@" + std::to_string(tick) + " expected=" + show(expected, output_type) +
         " actual=" + show(actual, output_type) + " [" + to_string(category) + "]";
}

std::string Counterexample::describe() const {
  std::ostringstream os;
  os << check << " counterexample at tick " << tick << " [" << to_string(category) << "]";
  if (expected || actual) {
    os << ": " << output << " expected " << show(expected, output_type) << ", actual "
       << show(actual, output_type);
  }
  if (!detail.empty()) os << "; " << detail;
  return os.str();
}

std::string CheckResult::summary() const {
  std::ostringstream os;
  os << check << " " << subject << ": ";
  if (passed()) {
    os << "PASS (" << cases_checked << " cases checked of " << cases_enumerated
       << " enumerated)";
  } else {
    os << "FAIL (" << cases_checked << " cases checked of " << cases_enumerated
       << " enumerated";
    if (failures > 1) os << ", " << failures << " failing";
    os << "); " << counterexample->describe();
  }
  return os.str();
}

int default_workers() {
  if (const char* env = std::getenv("FBCHECK_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bool replays(const Counterexample& c, const Probe& probe) {
  const auto again = probe(c.inputs, c.schedule);
  return again && again->tick == c.tick && again->expected == c.expected &&
         again->actual == c.actual && again->category == c.category && again->rows == c.rows;
}

CheckResult run_check(const std::string& check, const std::string& subject,
                      const InputSpace& space, const Probe& probe, const CheckOptions& options) {
  CheckResult result;
  result.check = check;
  result.subject = subject;
  const std::uint64_t total = space.cardinality();
  result.cases_enumerated = total;

  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t nchunks = (total + kChunk - 1) / kChunk;
  struct Chunk {
    std::uint64_t admitted = 0;
    std::uint64_t failures = 0;
    std::map<std::string, std::uint64_t> signatures;
    std::optional<Counterexample> first;
  };
  std::vector<Chunk> chunks(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    try {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        if (!options.collect_all && c * kChunk > best.load()) continue;
        auto& chunk = chunks[c];
        const std::uint64_t end = std::min(total, (c + 1) * kChunk);
        for (std::uint64_t i = c * kChunk; i < end; ++i) {
          if (!options.collect_all && i > best.load()) break;
          auto k = space.at(i);
          if (!k) continue;
          ++chunk.admitted;
          const auto& schedule = space.schedules[k->schedule];
          auto failure = probe(k->inputs, schedule);
          if (!failure) continue;
          failure->check = check;
          failure->subject = subject;
          failure->case_index = i;
          failure->input_types = space.inputs;
          failure->inputs = std::move(k->inputs);
          failure->schedule = schedule;
          ++chunk.failures;
          ++chunk.signatures[failure->signature()];
          if (!chunk.first) chunk.first = std::move(failure);
          if (!options.collect_all) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };

  const int workers = std::max(1, options.workers > 0 ? options.workers : default_workers());
  if (workers == 1 || nchunks <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (auto& chunk : chunks) {
    result.cases_checked += chunk.admitted;
    result.failures += chunk.failures;
    for (const auto& [sig, n] : chunk.signatures) result.signatures[sig] += n;
    if (chunk.first) {
      result.counterexample = std::move(chunk.first);
      if (!options.collect_all) break;
      // Later chunks still count; only the earliest failure is reported.
      for (auto& rest : chunks) rest.first.reset();
    }
  }
  if (result.counterexample) {
    result.replayed = replays(*result.counterexample, probe);
    if (options.shrink) {
      result.shrunk = shrink(*result.counterexample, probe,
                             [&space](const SignalMap& in, const SampleSchedule& s) {
                               return space.admits(in, s);
                             });
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Probes

namespace {

Counterexample table_fault_cex(const TableSpec& table, Tick t, std::vector<int> rows,
                               bool overlap) {
  Counterexample c;
  c.tick = t;
  c.output = table.output;
  c.output_type = table.output_type;
  c.category = overlap ? Category::TableOverlap : Category::TableGap;
  TableFault fault{overlap ? TableFault::Kind::Overlap : TableFault::Kind::Gap, t, rows};
  c.detail = fault.describe(table);
  c.rows = std::move(rows);
  return c;
}

Probe table_probe(const TableSpec& table, bool overlap) {
  auto spec = std::make_shared<const TableSpec>(table);
  return [spec, overlap](const SignalMap& in,
                         const SampleSchedule& schedule) -> std::optional<Counterexample> {
    const auto ctx = spec->context(in, schedule);
    for (Tick t = spec->initial_overrides ? 1 : 0; t <= schedule.horizon(); ++t) {
      auto rows = matching_rows(*spec, ctx, t);
      if (overlap ? rows.size() > 1 : rows.empty()) {
        return table_fault_cex(*spec, t, std::move(rows), overlap);
      }
    }
    return std::nullopt;
  };
}

Counterexample evaluation_fault_cex(const EvaluationFault& fault, const Subject& subject) {
  Counterexample c;
  c.tick = fault.tick();
  c.output = subject.requirement.output;
  c.output_type = subject.requirement.type;
  c.category = Category::Other;
  if (fault.table_fault()) {
    c.category = *fault.table_fault() == TableFault::Kind::Overlap ? Category::TableOverlap
                                                                   : Category::TableGap;
  }
  c.detail = fault.what();
  return c;
}

Category classify(Tick t, const SampleSchedule& schedule) {
  if (t == 0) return Category::Init;
  if (!schedule.is_sample(t)) return Category::SustainedTiming;
  return Category::Other;
}

}  // namespace

Probe completeness_probe(const TableSpec& table) { return table_probe(table, false); }
Probe disjointness_probe(const TableSpec& table) { return table_probe(table, true); }

Probe consistency_probe(const Subject& subject) {
  auto sim = std::make_shared<const Simulator>(subject.netlist);
  auto subj = std::make_shared<const Subject>(subject);
  return [sim, subj](const SignalMap& in,
                     const SampleSchedule& schedule) -> std::optional<Counterexample> {
    try {
      sim->run(subj->impl_inputs(in), schedule);
    } catch (const EvaluationFault& fault) {
      return evaluation_fault_cex(fault, *subj);
    }
    return std::nullopt;
  };
}

Probe correctness_probe(const Subject& subject) {
  auto sim = std::make_shared<const Simulator>(subject.netlist);
  auto subj = std::make_shared<const Subject>(subject);
  return [sim, subj](const SignalMap& in,
                     const SampleSchedule& schedule) -> std::optional<Counterexample> {
    SimTrace trace;
    try {
      trace = sim->run(subj->impl_inputs(in), schedule);
    } catch (const EvaluationFault& fault) {
      return evaluation_fault_cex(fault, *subj);
    }
    const auto& req = subj->requirement;
    Signal expected;
    try {
      expected = req.oracle(in, schedule);
    } catch (const TableFaultError& e) {
      Counterexample c;
      c.tick = e.fault().tick;
      c.output = req.output;
      c.output_type = req.type;
      c.category = e.fault().kind == TableFault::Kind::Overlap ? Category::TableOverlap
                                                               : Category::TableGap;
      c.rows = e.fault().rows;
      c.actual = trace.output(req.output)[c.tick];
      c.detail = std::string("requirement: ") + e.what();
      return c;
    }
    const auto& actual = trace.output(req.output);
    for (Tick t = 0; t <= schedule.horizon(); ++t) {
      if (actual[t] == expected[t]) continue;
      Counterexample c;
      c.tick = t;
      c.output = req.output;
      c.output_type = req.type;
      c.expected = expected[t];
      c.actual = actual[t];
      c.category = classify(t, schedule);
      return c;
    }
    return std::nullopt;
  };
}

namespace {

InductionVerdict induction_verdict(const Simulator& sim, const Subject& subject,
                                   const SignalMap& inputs, const SampleSchedule& schedule) {
  const auto impl_in = subject.impl_inputs(inputs);
  const auto& req = subject.requirement;
  InductionVerdict v;
  RecordedRun run;
  try {
    run = sim.run_recorded(impl_in, schedule);
  } catch (const EvaluationFault& fault) {
    v.direct = v.inductive = fault.tick();
    return v;
  }
  const auto expected = req.oracle(inputs, schedule);
  const auto& actual = run.trace.output(req.output);
  for (Tick t = 0; t <= schedule.horizon(); ++t) {
    if (actual[t] != expected[t]) {
      v.direct = t;
      break;
    }
  }
  if (actual[0] != expected[0]) {
    v.inductive = 0;
    return v;
  }
  const auto feedback = sim.feedback_wires_of(req.output);
  for (Tick t = 1; t <= schedule.horizon(); ++t) {
    std::map<std::string, Value, std::less<>> forced;
    for (const auto& w : feedback) forced[w] = expected[t - 1];
    if (sim.replay_tick(run, impl_in, schedule, t, forced, req.output) != expected[t]) {
      v.inductive = t;
      break;
    }
  }
  return v;
}

}  // namespace

InductionVerdict induction_verdict(const Subject& subject, const SignalMap& inputs,
                                   const SampleSchedule& schedule) {
  return induction_verdict(Simulator(subject.netlist), subject, inputs, schedule);
}

Probe induction_probe(const Subject& subject) {
  auto sim = std::make_shared<const Simulator>(subject.netlist);
  auto subj = std::make_shared<const Subject>(subject);
  return [sim, subj](const SignalMap& in,
                     const SampleSchedule& schedule) -> std::optional<Counterexample> {
    const auto v = induction_verdict(*sim, *subj, in, schedule);
    if (v.direct == v.inductive) return std::nullopt;
    auto name = [](const std::optional<Tick>& t) {
      return t ? "fails at tick " + std::to_string(*t) : std::string("passes");
    };
    Counterexample c;
    c.tick = std::min(v.direct.value_or(schedule.horizon()), v.inductive.value_or(schedule.horizon()));
    c.output = subj->requirement.output;
    c.output_type = subj->requirement.type;
    c.category = Category::Other;
    c.detail = "direct scan " + name(v.direct) + ", base plus step " + name(v.inductive);
    return c;
  };
}

CheckResult check_completeness(const TableSpec& table, const InputSpace& space,
                               const CheckOptions& options) {
  return run_check("completeness", table.name, space, completeness_probe(table), options);
}

CheckResult check_disjointness(const TableSpec& table, const InputSpace& space,
                               const CheckOptions& options) {
  return run_check("disjointness", table.name, space, disjointness_probe(table), options);
}

CheckResult check_consistency(const Subject& subject, const InputSpace& space,
                              const CheckOptions& options) {
  return run_check("consistency", subject.name, space, consistency_probe(subject), options);
}

CheckResult check_correctness(const Subject& subject, const InputSpace& space,
                              const CheckOptions& options) {
  return run_check("correctness", subject.name, space, correctness_probe(subject), options);
}

CheckResult check_induction(const Subject& subject, const InputSpace& space,
                            const CheckOptions& options) {
  return run_check("induction", subject.name, space, induction_probe(subject), options);
}

// ---------------------------------------------------------------------------
// Shrinking

int change_points(const SignalMap& inputs) {
  int n = 0;
  for (const auto& [_, s] : inputs) {
    for (Tick t = 1; t <= s.horizon(); ++t) n += s[t] != s[t - 1] ? 1 : 0;
  }
  return n;
}

Counterexample shrink(const Counterexample& original, const Probe& probe,
                      const std::function<bool(const SignalMap&, const SampleSchedule&)>&
                          admissible) {
  Counterexample best = original;
  auto attempt = [&](SignalMap inputs, const SampleSchedule& schedule) {
    if (admissible && !admissible(inputs, schedule)) return false;
    auto failure = probe(inputs, schedule);
    if (!failure || failure->category != best.category) return false;
    failure->check = best.check;
    failure->subject = best.subject;
    failure->case_index = best.case_index;
    failure->input_types = best.input_types;
    failure->inputs = std::move(inputs);
    failure->schedule = schedule;
    best = std::move(*failure);
    return true;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    const Tick horizon = best.schedule.horizon();
    for (Tick h = 0; h < horizon && !progress; ++h) {
      SignalMap cut;
      for (const auto& [name, s] : best.inputs) cut.emplace(name, s.truncated(h));
      progress = attempt(std::move(cut), best.schedule.truncated(h));
    }
    for (auto it = best.inputs.begin(); it != best.inputs.end() && !progress; ++it) {
      const auto name = it->first;
      const auto values = it->second.values();
      for (std::size_t t = 1; t < values.size() && !progress; ++t) {
        if (values[t] == values[t - 1]) continue;
        auto edited = values;
        for (std::size_t u = t; u < values.size() && values[u] == values[t]; ++u) {
          edited[u] = values[t - 1];
        }
        SignalMap candidate = best.inputs;
        candidate.insert_or_assign(name, Signal(std::move(edited)));
        progress = attempt(std::move(candidate), best.schedule);
      }
    }
    for (auto it = best.inputs.begin(); it != best.inputs.end() && !progress; ++it) {
      const auto& s = it->second;
      if (std::all_of(s.values().begin(), s.values().end(), [&](Value v) { return v == s[0]; })) {
        continue;
      }
      SignalMap candidate = best.inputs;
      candidate.insert_or_assign(it->first, Signal::constant(s.horizon(), s[0]));
      progress = attempt(std::move(candidate), best.schedule);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Reports

Json counterexample_to_json(const Counterexample& c) {
  Json out;
  out["check"] = c.check;
  out["subject"] = c.subject;
  out["case_index"] = c.case_index;
  out["category"] = to_string(c.category);
  out["tick"] = c.tick;
  out["output"] = c.output;
  out["expected"] = c.expected ? json_io::value_to_json(*c.expected, c.output_type) : Json();
  out["actual"] = c.actual ? json_io::value_to_json(*c.actual, c.output_type) : Json();
  if (!c.rows.empty()) {
    Json rows = Json::array();
    for (int r : c.rows) rows.push_back(r + 1);
    out["rows"] = rows;
  }
  if (!c.detail.empty()) out["detail"] = c.detail;
  out["schedule"] = json_io::schedule_to_json(c.schedule);
  Json inputs = Json::object();
  for (const auto& port : c.input_types) {
    auto it = c.inputs.find(port.name);
    if (it != c.inputs.end()) inputs[port.name] = json_io::signal_to_json(it->second, port.type);
  }
  out["inputs"] = inputs;
  return out;
}

Json result_to_json(const CheckResult& r) {
  Json out;
  out["check"] = r.check;
  out["subject"] = r.subject;
  out["verdict"] = r.passed() ? "pass" : "fail";
  out["cases_enumerated"] = r.cases_enumerated;
  out["cases_checked"] = r.cases_checked;
  if (!r.signatures.empty()) {
    out["failures"] = r.failures;
    Json sigs = Json::object();
    for (const auto& [sig, n] : r.signatures) sigs[sig] = n;
    out["signatures"] = sigs;
  }
  if (r.counterexample) {
    out["counterexample"] = counterexample_to_json(*r.counterexample);
    out["replayed"] = r.replayed;
  }
  if (r.shrunk) out["shrunk"] = counterexample_to_json(*r.shrunk);
  return out;
}

}  // namespace fbcheck
