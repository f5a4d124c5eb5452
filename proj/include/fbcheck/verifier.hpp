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

// Bounded-exhaustive and randomized checking of table healthiness,
// consistency and correctness, with replayed and shrunk counterexamples.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbcheck/json_io.hpp"
#include "fbcheck/requirement.hpp"
#include "fbcheck/simulate.hpp"

namespace fbcheck {

enum class Discipline {
  SampleAligned,   // values change only at sample ticks
  PerTick,         // any value at any tick
  Filtered,        // per-tick values, keeping only filtered trajectories
  RandomFiltered,  // seeded random filtered trajectories
};

std::string to_string(Discipline d);
Discipline parse_discipline(std::string_view text);

inline constexpr std::uint64_t kDefaultCardinalityCap = std::uint64_t{1} << 22;

class CardinalityRefused : public std::runtime_error {
 public:
  CardinalityRefused(std::uint64_t cardinality, std::uint64_t cap)
      : std::runtime_error("input space has " + std::to_string(cardinality) +
                           " cases, above the cap of " + std::to_string(cap) +
                           "; refusing rather than sampling"),
        cardinality_(cardinality) {}
  std::uint64_t cardinality() const { return cardinality_; }

 private:
  std::uint64_t cardinality_;
};

struct InputSpace {
  std::vector<ExternalPort> inputs;
  Discipline discipline = Discipline::SampleAligned;
  std::vector<SampleSchedule> schedules;
  std::uint64_t random_cases = 0;  // per schedule, RandomFiltered only
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultCardinalityCap;

  /// Number of cases enumerated before filtering. Throws CardinalityRefused
  /// above the cap and std::invalid_argument for non-enumerable inputs.
  std::uint64_t cardinality() const;
  std::uint64_t cases_for(std::size_t schedule) const;

  struct Case {
    std::uint64_t index = 0;
    std::size_t schedule = 0;
    SignalMap inputs;
  };
  /// Builds case `index`. Returns nullopt when the discipline rejects it.
  std::optional<Case> at(std::uint64_t index) const;
  bool admits(const SignalMap& inputs, const SampleSchedule& schedule) const;
};

enum class Category { Init, SustainedTiming, TableOverlap, TableGap, Other };

std::string to_string(Category c);
Category parse_category(std::string_view text);

struct Counterexample {
  std::string check;  // completeness | disjointness | consistency | correctness | induction
  std::string subject;
  std::uint64_t case_index = 0;
  std::vector<ExternalPort> input_types;
  SignalMap inputs;
  SampleSchedule schedule{TickDomain(1, 0), {0}, Duration(1), Duration(1)};
  Tick tick = 0;
  std::string output;
  std::optional<Value> expected;
  std::optional<Value> actual;
  ValueType output_type = ValueType::boolean();
  std::vector<int> rows;  // matching table rows, for table faults
  Category category = Category::Other;
  std::string detail;

  /// Key used to group failures: check, tick, expected, actual, category.
  std::string signature() const;
  std::string describe() const;
};

/// Replays one case. Returns the divergence, if any. The counterexample
/// fields other than inputs and schedule are filled by the probe.
using Probe = std::function<std::optional<Counterexample>(const SignalMap& inputs,
                                                          const SampleSchedule& schedule)>;

struct CheckOptions {
  bool collect_all = false;  // scan every case and count failure signatures
  int workers = 0;           // 0: FBCHECK_WORKERS or the hardware concurrency
  bool shrink = true;
};

struct CheckResult {
  std::string check;
  std::string subject;
  std::uint64_t cases_enumerated = 0;
  std::uint64_t cases_checked = 0;  // admitted by the discipline, up to the first failure
  std::uint64_t failures = 0;       // collect_all only (otherwise 0 or 1)
  std::map<std::string, std::uint64_t> signatures;
  std::optional<Counterexample> counterexample;
  std::optional<Counterexample> shrunk;
  bool replayed = false;  // the counterexample reproduced on replay

  bool passed() const { return !counterexample; }
  std::string summary() const;
};

/// Worker count from FBCHECK_WORKERS, falling back to the hardware concurrency.
int default_workers();

/// Runs `probe` over the space. The reported counterexample is the failing
/// case with the smallest index, independent of the worker count.
CheckResult run_check(const std::string& check, const std::string& subject,
                      const InputSpace& space, const Probe& probe, const CheckOptions& options = {});

Probe completeness_probe(const TableSpec& table);
Probe disjointness_probe(const TableSpec& table);
Probe consistency_probe(const Subject& subject);
Probe correctness_probe(const Subject& subject);
/// Compares the direct scan with base case plus induction step, where the
/// step re-evaluates tick t with the output's feedback wires forced to the
/// requirement's value at t - 1.
Probe induction_probe(const Subject& subject);

CheckResult check_completeness(const TableSpec& table, const InputSpace& space,
                               const CheckOptions& options = {});
CheckResult check_disjointness(const TableSpec& table, const InputSpace& space,
                               const CheckOptions& options = {});
CheckResult check_consistency(const Subject& subject, const InputSpace& space,
                              const CheckOptions& options = {});
CheckResult check_correctness(const Subject& subject, const InputSpace& space,
                              const CheckOptions& options = {});
CheckResult check_induction(const Subject& subject, const InputSpace& space,
                            const CheckOptions& options = {});

/// First tick where direct and inductive formulations fail, for one case.
struct InductionVerdict {
  std::optional<Tick> direct;
  std::optional<Tick> inductive;
};
InductionVerdict induction_verdict(const Subject& subject, const SignalMap& inputs,
                                   const SampleSchedule& schedule);

/// True iff replaying `c` with `probe` yields the same divergence.
bool replays(const Counterexample& c, const Probe& probe);

/// Greedy shrinking to a fixpoint: truncate the horizon, remove change points,
/// flatten inputs to their initial value. Candidates must keep failing and, if
/// `admissible` is given, stay inside it.
Counterexample shrink(const Counterexample& c, const Probe& probe,
                      const std::function<bool(const SignalMap&, const SampleSchedule&)>&
                          admissible = {});

int change_points(const SignalMap& inputs);

Json counterexample_to_json(const Counterexample& c);
Json result_to_json(const CheckResult& r);

}  // namespace fbcheck
