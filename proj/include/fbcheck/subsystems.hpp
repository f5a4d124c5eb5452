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

// The Trip Sealed-In and Pushbutton case studies: requirement oracles,
// requirement tables, and the candidate and revised implementations.

#include <string>
#include <string_view>

#include "fbcheck/netlist.hpp"
#include "fbcheck/requirement.hpp"
#include "fbcheck/table.hpp"

namespace fbcheck {

inline constexpr Value e_Trip = 0;
inline constexpr Value e_NotTrip = 1;
inline constexpr Value e_Pressed = 0;
inline constexpr Value e_NotPressed = 1;
inline constexpr Value e_pbNotDebounced = 0;
inline constexpr Value e_pbDebounced = 1;
inline constexpr Value e_pbStuck = 2;

ValueType trip_enum();
ValueType pb_status();
ValueType pb_output();

struct SealedInConsts {
  Duration k_sealindelay{40};
  Duration delta_l{10};
  Duration delta_r{0};

  // Throws DomainError unless delta_l <= k_sealindelay and all are whole ticks.
  void validate(std::int64_t delta) const;
  Duration preset() const { return k_sealindelay - delta_l; }
};

struct PushbuttonConsts {
  Duration k_debounce{30};
  Duration k_stuck{60};
  Duration delta_l{10};
  Duration delta_r{0};  // carried for completeness, unused by the oracle

  void validate(std::int64_t delta) const;
  Duration debounce_preset() const { return k_debounce - delta_l; }
  Duration stuck_preset() const { return k_stuck - delta_l; }
};

enum class Variant { Original, Revised };
std::string to_string(Variant v);
Variant parse_variant(std::string_view text);

// Literal: the collapsed first row read as (m = e_NotPressed) and not stuck.
enum class PushbuttonTable { Original, Revised, Literal };
std::string to_string(PushbuttonTable t);

/// e_NotTrip -> true, e_Trip -> false.
Signal abst_parm_trip(const Signal& trip);

/// The recursive Trip_SealedIn_f oracle.
Signal trip_sealedin_req(const Signal& any_parm_trip, const Signal& trip,
                         const Signal& man_reset_req, const SampleSchedule& schedule,
                         const SealedInConsts& consts);

/// The same requirement as a four-row table with NC results, over inputs
/// Any_parm_trip, Trip and Man_reset_req.
TableSpec sealedin_req_table(const SealedInConsts& consts);

Netlist build_trip_sealedin_impl(Variant variant, const SealedInConsts& consts);

/// Requirement table over input m, with derived signals pressed, debounced
/// and stuck.
TableSpec pushbutton_table(PushbuttonTable table, const PushbuttonConsts& consts);

Signal pushbutton_req(const Signal& m, const SampleSchedule& schedule,
                      const PushbuttonConsts& consts, PushbuttonTable table,
                      TableMode mode = TableMode::Strict);

Netlist build_pushbutton_impl(const PushbuttonConsts& consts);

// TON requirement tables over input IN with derived d = timer_i(IN, pt).
TableSpec ton_q_table(Duration pt);
TableSpec ton_et_table(Duration pt);          // first two rows conjoined with IN
TableSpec ton_et_literal_table(Duration pt);  // rows d >= PT, d < PT, not IN

Subject trip_sealedin_subject(Variant variant, const SealedInConsts& consts);
/// The pushbutton netlist checked against the given requirement table.
Subject pushbutton_subject(PushbuttonTable table, const PushbuttonConsts& consts,
                           TableMode mode = TableMode::Strict);

}  // namespace fbcheck
