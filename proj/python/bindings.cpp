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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fbcheck/blocks.hpp"
#include "fbcheck/scenario.hpp"
#include "fbcheck/subsystems.hpp"
#include "fbcheck/timing_ops.hpp"
#include "fbcheck/verifier.hpp"

namespace py = pybind11;
using namespace fbcheck;

namespace {

SampleSchedule make_schedule(std::int64_t delta, Tick horizon,
                             const std::optional<std::vector<Tick>>& samples) {
  TickDomain domain(delta, horizon);
  if (!samples) return SampleSchedule::every_tick(domain);
  Tick tmin = horizon + 1, tmax = 1;
  for (std::size_t i = 1; i < samples->size(); ++i) {
    tmin = std::min(tmin, (*samples)[i] - (*samples)[i - 1]);
    tmax = std::max(tmax, (*samples)[i] - (*samples)[i - 1]);
  }
  if (samples->size() < 2) tmin = tmax = std::max<Tick>(1, horizon + 1);
  return SampleSchedule(domain, *samples, domain.ticks(tmin), domain.ticks(tmax));
}

Trajectory<bool> bools(const std::vector<bool>& values) { return Trajectory<bool>(values); }

std::vector<std::int64_t> raw(const Trajectory<Duration>& d) {
  std::vector<std::int64_t> out;
  for (auto v : d.values()) out.push_back(v.value);
  return out;
}

// Scenario run as JSON text: lanes keyed by name plus the diagram.
std::string simulate_json(const std::string& scenario_text, const std::string& base_dir) {
  const auto s = parse_scenario(json_io::parse_text(scenario_text, "<scenario>"), base_dir);
  const auto run = run_scenario(s);
  Json out;
  Json lanes = Json::object();
  for (const auto& lane : run.lanes) {
    Json values = Json::array();
    for (Value v : lane.values.values()) values.push_back(json_io::value_to_json(v, lane.type));
    lanes[lane.name] = values;
  }
  out["lanes"] = lanes;
  out["samples"] = s.schedule.samples();
  out["diagram"] = render_diagram(run.lanes, s.schedule);
  out["csv"] = write_csv(run.lanes);
  if (s.expect) {
    const auto outcome = replay_expectation(s);
    out["replay"] = {{"reproduced", outcome.reproduced}, {"message", outcome.message}};
  }
  return out.dump();
}

std::string verify_json(const std::string& subsystem, const std::string& variant,
                        const std::optional<std::string>& space_text, int workers) {
  std::optional<Json> doc;
  if (space_text) doc = json_io::parse_text(*space_text, "<space>");
  const auto plan = plan_verification(subsystem, variant, doc);
  CheckOptions options;
  options.workers = workers;
  Json out;
  out["subject"] = plan.subject.name;
  out["cases"] = plan.space.cardinality();
  Json checks = Json::array();
  bool pass = true;
  for (const auto& r : run_verification(plan, options)) {
    pass = pass && r.passed();
    checks.push_back(result_to_json(r));
  }
  out["verdict"] = pass ? "pass" : "fail";
  out["checks"] = checks;
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Function block simulation and bounded verification";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CardinalityRefused>(m, "CardinalityRefused", PyExc_RuntimeError);

  m.def("held_for_i",
        [](const std::vector<bool>& p, std::int64_t d, std::int64_t delta,
           std::optional<std::vector<Tick>> samples) {
          auto s = make_schedule(delta, static_cast<Tick>(p.size()) - 1, samples);
          return held_for_i_trace(bools(p), Duration(d), s).values();
        },
        py::arg("p"), py::arg("d"), py::arg("delta") = 1, py::arg("samples") = py::none());
  m.def("timer_i",
        [](const std::vector<bool>& p, std::int64_t timeout, std::int64_t delta,
           std::optional<std::vector<Tick>> samples) {
          auto s = make_schedule(delta, static_cast<Tick>(p.size()) - 1, samples);
          return raw(timer_i_trace(bools(p), s, Duration(timeout)));
        },
        py::arg("p"), py::arg("timeout"), py::arg("delta") = 1, py::arg("samples") = py::none());
  m.def("ton",
        [](const std::vector<bool>& in, std::int64_t pt, std::int64_t delta,
           std::optional<std::vector<Tick>> samples) {
          auto s = make_schedule(delta, static_cast<Tick>(in.size()) - 1, samples);
          auto out = ton(bools(in), Duration(pt), s);
          return std::make_pair(out.q.values(), raw(out.et));
        },
        py::arg("inputs"), py::arg("pt"), py::arg("delta") = 1, py::arg("samples") = py::none());
  m.def("_simulate_json", &simulate_json, py::arg("scenario"), py::arg("base_dir") = ".");
  m.def("_verify_json", &verify_json, py::arg("subsystem"), py::arg("variant"),
        py::arg("space") = py::none(), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("_netlist_json",
        [](const std::string& subsystem, const std::string& variant) {
          const auto n = subsystem == "pushbutton"
                             ? build_pushbutton_impl({})
                             : build_trip_sealedin_impl(parse_variant(variant), {});
          return json_io::netlist_to_json(n).dump();
        },
        py::arg("subsystem"), py::arg("variant") = "original");
}
