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

#include "fbcheck/subsystems.hpp"

#include <stdexcept>

#include "fbcheck/timing_ops.hpp"

namespace fbcheck {

namespace {

void check_aligned(std::int64_t delta, Duration d, const char* what) {
  if (d.value < 0 || d.value % delta != 0) {
    throw DomainError(DomainError::Kind::Misaligned,
                      std::string(what) + " = " + std::to_string(d.value) +
                          " is not a multiple of delta " + std::to_string(delta));
  }
}

const Signal& input(const SignalMap& inputs, std::string_view name) {
  auto it = inputs.find(name);
  if (it == inputs.end()) throw std::invalid_argument("missing input '" + std::string(name) + "'");
  return it->second;
}

Trajectory<bool> equals(const Signal& s, Value v) {
  return s.map([v](Value x) { return x == v; });
}

PortRef port(std::string block, std::string name) { return {std::move(block), std::move(name)}; }
PortRef ext(std::string name) { return {"", std::move(name)}; }

BlockInstance block(std::string id, BlockKind kind) {
  BlockInstance b;
  b.id = std::move(id);
  b.kind = kind;
  return b;
}

BlockInstance ton_block(std::string id, Duration pt) {
  auto b = block(std::move(id), BlockKind::Ton);
  b.pt = pt;
  return b;
}

BlockInstance const_block(std::string id, ValueType type, Value v) {
  auto b = block(std::move(id), BlockKind::Const);
  b.type = std::move(type);
  b.value = v;
  return b;
}

Wire wire(std::string name, PortRef from, std::vector<PortRef> to) {
  return {std::move(name), std::move(from), std::move(to), false, std::nullopt};
}

using guards::all;
using guards::is_false;
using guards::is_true;

}  // namespace

ValueType trip_enum() { return ValueType::enumeration("TripEnum"); }
ValueType pb_status() { return ValueType::enumeration("PbStatus"); }
ValueType pb_output() { return ValueType::enumeration("PbOutput"); }

void SealedInConsts::validate(std::int64_t delta) const {
  check_aligned(delta, k_sealindelay, "k_sealindelay");
  check_aligned(delta, delta_l, "delta_l");
  check_aligned(delta, delta_r, "delta_r");
  if (delta_l > k_sealindelay) {
    throw DomainError(DomainError::Kind::BadArgument, "delta_l exceeds k_sealindelay");
  }
}

void PushbuttonConsts::validate(std::int64_t delta) const {
  check_aligned(delta, k_debounce, "k_debounce");
  check_aligned(delta, k_stuck, "k_stuck");
  check_aligned(delta, delta_l, "delta_l");
  check_aligned(delta, delta_r, "delta_r");
  if (delta_l > k_debounce || k_debounce > k_stuck) {
    throw DomainError(DomainError::Kind::BadArgument,
                      "expected delta_l <= k_debounce <= k_stuck");
  }
}

std::string to_string(Variant v) { return v == Variant::Original ? "original" : "revised"; }

Variant parse_variant(std::string_view text) {
  if (text == "original") return Variant::Original;
  if (text == "revised") return Variant::Revised;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

std::string to_string(PushbuttonTable t) {
  switch (t) {
    case PushbuttonTable::Original:
      return "original";
    case PushbuttonTable::Revised:
      return "revised";
    case PushbuttonTable::Literal:
      return "literal";
  }
  return "?";
}

Signal abst_parm_trip(const Signal& trip) {
  return trip.map([](Value v) { return from_bool(v == e_NotTrip); });
}

Signal trip_sealedin_req(const Signal& any_parm_trip, const Signal& trip,
                         const Signal& man_reset_req, const SampleSchedule& schedule,
                         const SealedInConsts& consts) {
  const auto held = held_for_i_trace(equals(trip, e_Trip), consts.preset(), schedule);
  std::vector<Value> out(static_cast<std::size_t>(trip.horizon()) + 1);
  out[0] = 1;
  for (Tick t = 1; t <= trip.horizon(); ++t) {
    const Value prev = out[static_cast<std::size_t>(t) - 1];
    Value v = prev;
    if (any_parm_trip[t] != 0) {
      if (held[t]) v = 1;
    } else if (man_reset_req[t] != 0) {
      v = 0;
    }
    out[static_cast<std::size_t>(t)] = v;
  }
  return Signal(std::move(out));
}

TableSpec sealedin_req_table(const SealedInConsts& consts) {
  TableSpec spec;
  spec.name = "sealedin-req";
  spec.output = "Trip_SealedIn";
  spec.output_type = ValueType::boolean();
  spec.inputs = {{"Any_parm_trip", ValueType::boolean()},
                 {"Trip", trip_enum()},
                 {"Man_reset_req", ValueType::boolean()}};
  const Duration preset = consts.preset();
  spec.derive = [preset](const SignalMap& in, const SampleSchedule& schedule) {
    SignalMap ctx = in;
    ctx.insert_or_assign(
        "HELD", to_signal(held_for_i_trace(equals(input(in, "Trip"), e_Trip), preset, schedule)));
    return ctx;
  };
  spec.rows = {
      {"Any_parm_trip & HELD", all({is_true("Any_parm_trip"), is_true("HELD")}),
       TableResult::value(1)},
      {"Any_parm_trip & NOT HELD", all({is_true("Any_parm_trip"), is_false("HELD")}),
       TableResult::no_change()},
      {"NOT Any_parm_trip & Man_reset_req",
       all({is_false("Any_parm_trip"), is_true("Man_reset_req")}), TableResult::value(0)},
      {"NOT Any_parm_trip & NOT Man_reset_req",
       all({is_false("Any_parm_trip"), is_false("Man_reset_req")}), TableResult::no_change()},
  };
  spec.initial = 1;
  spec.initial_overrides = true;
  return spec;
}

Netlist build_trip_sealedin_impl(Variant variant, const SealedInConsts& consts) {
  Netlist n;
  n.name = "trip-sealed-in-" + to_string(variant);
  n.inputs = {{"Any_parm_trip", ValueType::boolean()},
              {"Trip", ValueType::boolean()},
              {"Man_reset_req", ValueType::boolean()}};
  n.outputs = {{"Trip_SealedIn", ValueType::boolean()}};

  n.blocks.push_back(block("not_trip", BlockKind::Not));
  n.blocks.push_back(ton_block("ton_sealin", consts.preset()));
  n.blocks.push_back(block("conj_trip", BlockKind::Conj));
  n.blocks.push_back(block("disj_seal", BlockKind::Disj));
  n.blocks.push_back(block("not_any", BlockKind::Not));
  n.blocks.push_back(block("conj_reset", BlockKind::Conj));
  n.blocks.push_back(block("rs_sealin", BlockKind::Rs));

  n.wires = {
      wire("Any_parm_trip", ext("Any_parm_trip"), {port("conj_trip", "in0"), port("not_any", "in")}),
      wire("Trip", ext("Trip"), {port("not_trip", "in")}),
      wire("Man_reset_req", ext("Man_reset_req"), {port("conj_reset", "in1")}),
      wire("w6", port("not_trip", "out"), {port("ton_sealin", "in")}),
      wire("w1", port("ton_sealin", "q"), {port("conj_trip", "in1")}),
      wire("et_sealin", port("ton_sealin", "et"), {}),
      wire("w2", port("conj_trip", "out"), {port("disj_seal", "in0")}),
      wire("w3", port("disj_seal", "out"), {port("rs_sealin", "set")}),
      wire("w5", port("not_any", "out"), {port("conj_reset", "in0")}),
      wire("w4", port("conj_reset", "out"), {port("rs_sealin", "reset")}),
  };

  PortRef output_source = port("rs_sealin", "q");
  if (variant == Variant::Revised) {
    n.blocks.push_back(block("init_sealin", BlockKind::Init));
    n.blocks.push_back(const_block("true_sealin", ValueType::boolean(), 1));
    n.blocks.push_back(block("sel_sealin", BlockKind::Sel));
    n.wires.push_back(wire("Q1", port("rs_sealin", "q"), {port("sel_sealin", "in0")}));
    n.wires.push_back(wire("first_tick", port("init_sealin", "out"), {port("sel_sealin", "g")}));
    n.wires.push_back(wire("init_value", port("true_sealin", "out"), {port("sel_sealin", "in1")}));
    output_source = port("sel_sealin", "out");
  }
  n.wires.push_back(wire("Trip_SealedIn", output_source, {ext("Trip_SealedIn")}));
  n.wires.push_back({"Trip_SealedIn_fb", output_source, {port("disj_seal", "in1")}, true, 0});
  return n;
}

TableSpec pushbutton_table(PushbuttonTable table, const PushbuttonConsts& consts) {
  TableSpec spec;
  spec.name = "pushbutton-" + to_string(table);
  spec.output = "f_Pushbutton";
  spec.output_type = pb_output();
  spec.inputs = {{"m", pb_status()}};
  const Duration debounce = consts.debounce_preset();
  const Duration stuck = consts.stuck_preset();
  spec.derive = [debounce, stuck](const SignalMap& in, const SampleSchedule& schedule) {
    SignalMap ctx = in;
    const auto pressed = equals(input(in, "m"), e_Pressed);
    ctx.insert_or_assign("pressed", to_signal(pressed));
    ctx.insert_or_assign("debounced", to_signal(held_for_i_trace(pressed, debounce, schedule)));
    ctx.insert_or_assign("stuck", to_signal(held_for_i_trace(pressed, stuck, schedule)));
    return ctx;
  };
  const TableRow debounced_row{"debounced & NOT stuck",
                               all({is_true("debounced"), is_false("stuck")}),
                               TableResult::value(e_pbDebounced)};
  const TableRow stuck_row{"stuck", is_true("stuck"), TableResult::value(e_pbStuck)};
  switch (table) {
    case PushbuttonTable::Original:
      spec.rows = {
          {"m = e_NotPressed", is_false("pressed"), TableResult::value(e_pbNotDebounced)},
          {"m = e_Pressed & NOT debounced", all({is_true("pressed"), is_false("debounced")}),
           TableResult::value(e_pbNotDebounced)},
          debounced_row,
          stuck_row,
      };
      break;
    case PushbuttonTable::Revised:
      spec.rows = {
          {"NOT debounced", is_false("debounced"), TableResult::value(e_pbNotDebounced)},
          debounced_row,
          stuck_row,
      };
      break;
    case PushbuttonTable::Literal:
      spec.rows = {
          {"m = e_NotPressed & NOT stuck", all({is_false("pressed"), is_false("stuck")}),
           TableResult::value(e_pbNotDebounced)},
          debounced_row,
          stuck_row,
      };
      break;
  }
  return spec;
}

Signal pushbutton_req(const Signal& m, const SampleSchedule& schedule,
                      const PushbuttonConsts& consts, PushbuttonTable table, TableMode mode) {
  const auto spec = pushbutton_table(table, consts);
  return evaluate_table(spec, spec.context({{"m", m}}, schedule), m.horizon(), mode);
}

Netlist build_pushbutton_impl(const PushbuttonConsts& consts) {
  Netlist n;
  n.name = "pushbutton";
  n.inputs = {{"m", pb_status()}};
  n.outputs = {{"f_Pushbutton", pb_output()}};

  auto decode = block("eq_pressed", BlockKind::Eq);
  decode.type = pb_status();
  decode.value = e_Pressed;
  n.blocks.push_back(decode);
  n.blocks.push_back(ton_block("ton_debounce", consts.debounce_preset()));
  n.blocks.push_back(ton_block("ton_stuck", consts.stuck_preset()));
  n.blocks.push_back(const_block("c_not_debounced", pb_output(), e_pbNotDebounced));
  n.blocks.push_back(const_block("c_debounced", pb_output(), e_pbDebounced));
  n.blocks.push_back(const_block("c_stuck", pb_output(), e_pbStuck));
  auto sel_debounce = block("sel_debounce", BlockKind::Sel);
  sel_debounce.type = pb_output();
  n.blocks.push_back(sel_debounce);
  auto sel_stuck = block("sel_stuck", BlockKind::Sel);
  sel_stuck.type = pb_output();
  n.blocks.push_back(sel_stuck);

  n.wires = {
      wire("m", ext("m"), {port("eq_pressed", "in")}),
      wire("pressed", port("eq_pressed", "out"),
           {port("ton_debounce", "in"), port("ton_stuck", "in")}),
      wire("debounced", port("ton_debounce", "q"), {port("sel_debounce", "g")}),
      wire("et_debounce", port("ton_debounce", "et"), {}),
      wire("stuck", port("ton_stuck", "q"), {port("sel_stuck", "g")}),
      wire("et_stuck", port("ton_stuck", "et"), {}),
      wire("v_not_debounced", port("c_not_debounced", "out"), {port("sel_debounce", "in0")}),
      wire("v_debounced", port("c_debounced", "out"), {port("sel_debounce", "in1")}),
      wire("v_stuck", port("c_stuck", "out"), {port("sel_stuck", "in1")}),
      wire("not_stuck_value", port("sel_debounce", "out"), {port("sel_stuck", "in0")}),
      wire("f_Pushbutton", port("sel_stuck", "out"), {ext("f_Pushbutton")}),
  };
  return n;
}

namespace {

TableSpec ton_table_base(std::string name, std::string output, ValueType type, Duration pt) {
  TableSpec spec;
  spec.name = std::move(name);
  spec.output = std::move(output);
  spec.output_type = std::move(type);
  spec.inputs = {{"IN", ValueType::boolean()}};
  spec.derive = [pt](const SignalMap& in, const SampleSchedule& schedule) {
    SignalMap ctx = in;
    ctx.insert_or_assign("d", to_signal(timer_i_trace(to_bools(input(in, "IN")), schedule, pt)));
    ctx.insert_or_assign("PT", Signal::constant(input(in, "IN").horizon(), pt.value));
    return ctx;
  };
  return spec;
}

}  // namespace

TableSpec ton_q_table(Duration pt) {
  auto spec = ton_table_base("ton-q", "Q", ValueType::boolean(), pt);
  spec.rows = {
      {"d >= PT", guards::at_least("d", "PT"), TableResult::value(1)},
      {"d < PT", guards::less_than("d", "PT"), TableResult::value(0)},
  };
  return spec;
}

TableSpec ton_et_table(Duration pt) {
  auto spec = ton_table_base("ton-et", "ET", ValueType::duration(), pt);
  spec.rows = {
      {"IN & d >= PT", all({is_true("IN"), guards::at_least("d", "PT")}), TableResult::of("PT")},
      {"IN & d < PT", all({is_true("IN"), guards::less_than("d", "PT")}), TableResult::of("d")},
      {"NOT IN", is_false("IN"), TableResult::value(0)},
  };
  return spec;
}

TableSpec ton_et_literal_table(Duration pt) {
  auto spec = ton_table_base("ton-et-literal", "ET", ValueType::duration(), pt);
  spec.rows = {
      {"d >= PT", guards::at_least("d", "PT"), TableResult::of("PT")},
      {"d < PT", guards::less_than("d", "PT"), TableResult::of("d")},
      {"NOT IN", is_false("IN"), TableResult::value(0)},
  };
  return spec;
}

Subject trip_sealedin_subject(Variant variant, const SealedInConsts& consts) {
  Subject s;
  s.name = "trip-sealed-in/" + to_string(variant);
  s.netlist = build_trip_sealedin_impl(variant, consts);
  s.inputs = {{"Any_parm_trip", ValueType::boolean()},
              {"Trip", trip_enum()},
              {"Man_reset_req", ValueType::boolean()}};
  s.requirement = {"Trip_SealedIn_f", "Trip_SealedIn", ValueType::boolean(),
                   [consts](const SignalMap& in, const SampleSchedule& schedule) {
                     return trip_sealedin_req(input(in, "Any_parm_trip"), input(in, "Trip"),
                                              input(in, "Man_reset_req"), schedule, consts);
                   }};
  s.boundary = [](const SignalMap& in) {
    SignalMap out = in;
    out.insert_or_assign("Trip", abst_parm_trip(input(in, "Trip")));
    return out;
  };
  s.table = sealedin_req_table(consts);
  return s;
}

Subject pushbutton_subject(PushbuttonTable table, const PushbuttonConsts& consts,
                           TableMode mode) {
  Subject s;
  s.name = "pushbutton/" + to_string(table);
  s.netlist = build_pushbutton_impl(consts);
  s.inputs = {{"m", pb_status()}};
  s.requirement = {"f_Pushbutton " + to_string(table) + " table", "f_Pushbutton", pb_output(),
                   [consts, table, mode](const SignalMap& in, const SampleSchedule& schedule) {
                     return pushbutton_req(input(in, "m"), schedule, consts, table, mode);
                   }};
  s.table = pushbutton_table(table, consts);
  return s;
}

}  // namespace fbcheck
