// Copyright 2026 The IRSM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "irsm/center/planner.hpp"
#include "irsm/core/archive.hpp"
#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"
#include "irsm/core/manifest.hpp"
#include "irsm/sim/harness.hpp"
#include "irsm/sim/scenario.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
std::string dump(const json& j) { return j.dump(); }

irsm::SimTime to_time(double s) { return irsm::at(irsm::SimDuration{static_cast<std::int64_t>(s * 1e6)}); }

std::string compute_actions_json(const std::string& desired, const std::string& reported) {
  const auto d = json::parse(desired).get<irsm::DesiredState>();
  const auto r = json::parse(reported).get<irsm::ReportedState>();
  return dump(irsm::actions_to_json(irsm::center::compute_actions(d, r)));
}

py::bytes build_package(const std::string& manifest, const std::map<std::string, std::string>& payload) {
  json m = json::parse(manifest);
  irsm::PayloadFiles files(payload.begin(), payload.end());
  if (!m.contains("payload_digest")) m["payload_digest"] = irsm::payload_digest(files);
  return py::bytes(irsm::build_package_archive(irsm::validate_manifest(m), files));
}

py::tuple read_package(const py::bytes& archive) {
  const auto pkg = irsm::read_package_archive(std::string(archive));
  py::dict payload;
  for (const auto& [path, body] : pkg.payload) payload[py::str(path)] = py::bytes(body);
  return py::make_tuple(dump(irsm::to_json(pkg.manifest)), payload);
}

std::string bootstrap(int count, const std::map<std::string, double>& mix) {
  std::map<irsm::RegionClass, double> m;
  for (const auto& [name, w] : mix) {
    const auto r = irsm::enum_from_string<irsm::RegionClass>(name);
    if (!r) throw irsm::Error(irsm::ErrorCode::kInvalidArgument, "unknown region class " + name);
    m[*r] = w;
  }
  return irsm::sim::stations_to_yaml(irsm::sim::fleet_bootstrap(count, m));
}

}  // namespace

PYBIND11_MODULE(_irsm, m) {
  m.doc() = "ITS roadside station management simulator";

  static py::exception<irsm::Error> error(m, "IrsmError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const irsm::Error& e) {
      error(e.what());
    }
  });

  py::class_<irsm::sim::Simulation>(m, "Simulation")
      .def(py::init([](const std::string& text, std::optional<std::uint64_t> seed) {
             return std::make_unique<irsm::sim::Simulation>(irsm::sim::parse_scenario(text), seed);
           }),
           py::arg("scenario_yaml"), py::arg("seed") = py::none())
      .def("start", &irsm::sim::Simulation::start)
      .def("advance_to", [](irsm::sim::Simulation& s, double t) { s.advance_to(to_time(t)); }, py::arg("seconds"))
      .def("run_json", [](irsm::sim::Simulation& s) { return dump(s.run().to_json()); })
      .def("report_json", [](irsm::sim::Simulation& s) { return dump(s.report().to_json()); })
      .def("metric", &irsm::sim::Simulation::metric, py::arg("name"))
      .def_property_readonly("now", [](const irsm::sim::Simulation& s) { return irsm::to_seconds(s.now()); })
      .def_property_readonly("seed", &irsm::sim::Simulation::seed)
      .def("trace_text", [](const irsm::sim::Simulation& s) {
        std::ostringstream out;
        s.trace().write(out);
        return out.str();
      });

  m.def("known_metrics", [] {
    const auto& k = irsm::sim::known_metrics();
    return std::vector<std::string>(k.begin(), k.end());
  });
  m.def("compute_actions_json", &compute_actions_json, py::arg("desired"), py::arg("reported"));
  m.def("build_package", &build_package, py::arg("manifest"), py::arg("payload"));
  m.def("read_package", &read_package, py::arg("archive"));
  m.def("bootstrap_yaml", &bootstrap, py::arg("count"), py::arg("mix"));
  m.def("sha256_hex", [](const py::bytes& b) { return irsm::sha256_hex(std::string(b)); });
}
