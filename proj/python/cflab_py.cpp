// Copyright 2026 The cflab Authors
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

// _cflab: thin bindings.  Big integers and rationals cross as decimal
// strings, structured results as JSON text; the cflab package wraps both.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cflab/cf/convergents.hpp"
#include "cflab/cli/config.hpp"
#include "cflab/cli/report.hpp"
#include "cflab/cli/runner.hpp"
#include "cflab/dio/renyi.hpp"
#include "cflab/error.hpp"
#include "cflab/measures/rng.hpp"
#include "json.hpp"

namespace py = pybind11;

namespace {

using nlohmann::json;

std::vector<std::string> expand(const std::string& x) {
  std::vector<std::string> out;
  for (const auto& a : cflab::expand_rational(cflab::parse_rational(x))) {
    out.push_back(cflab::to_string(a));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> convergents(
    const std::vector<std::string>& digits) {
  std::vector<std::pair<std::string, std::string>> out;
  cflab::ConvergentState s = cflab::ConvergentState::initial();
  for (const auto& d : digits) {
    cflab::advance_in_place(s, cflab::BigInt(d));
    out.emplace_back(cflab::to_string(s.p_cur), cflab::to_string(s.q_cur));
  }
  return out;
}

std::string evaluate(const std::vector<std::string>& digits) {
  std::vector<cflab::BigInt> ds;
  for (const auto& d : digits) ds.emplace_back(d);
  return cflab::to_string(cflab::evaluate_finite(ds));
}

cflab::ExperimentConfig config_of(const std::string& config_json) {
  json j;
  try {
    j = json::parse(config_json);
  } catch (const json::exception& e) {
    throw cflab::ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  return cflab::ExperimentConfig::from_json(j);
}

std::string run(const std::string& config_json) {
  const cflab::ExperimentConfig config = config_of(config_json);
  cflab::RunResult result;
  {
    py::gil_scoped_release release;
    result = cflab::run_experiment(config);
  }
  json doc = cflab::report_document(config, result);
  json tables = json::object();
  for (const auto& t : result.tables) tables[t.name] = t.to_csv();
  doc["tables"] = std::move(tables);
  return doc.dump();
}

std::string canonical_config(const std::string& config_json) {
  return config_of(config_json).to_json().dump();
}

std::string config_hash(const std::string& config_json) { return config_of(config_json).hash(); }

std::string renyi(std::size_t max_prefix_len, unsigned long max_digit, std::size_t max_future_len,
                  bool include_pairs) {
  cflab::RenyiCheckReport r;
  {
    py::gil_scoped_release release;
    r = cflab::renyi_cylinder_check(max_prefix_len, max_digit, max_future_len);
  }
  return r.to_json(include_pairs).dump();
}

}  // namespace

PYBIND11_MODULE(_cflab, m) {
  m.doc() = "cflab native core";

  // Translators run newest first, so subclasses register after the base.
  auto base = py::register_exception<cflab::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<cflab::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<cflab::InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<cflab::UndecidableAtCap>(m, "UndecidableAtCap", base.ptr());
  py::register_exception<cflab::StreamExhausted>(m, "StreamExhausted", base.ptr());

  m.def("expand_rational", &expand, py::arg("x"), "Digits of a rational in (0,1) given as 'p/q'.");
  m.def("convergents", &convergents, py::arg("digits"), "(p_n, q_n) after each digit.");
  m.def("evaluate", &evaluate, py::arg("digits"), "[0; a_1, ..., a_n] as 'p/q'.");
  m.def("run", &run, py::arg("config_json"),
        "Run an experiment; returns the JSON report document with CSV tables.");
  m.def("canonical_config", &canonical_config, py::arg("config_json"));
  m.def("config_hash", &config_hash, py::arg("config_json"));
  m.def("renyi_cylinder_check", &renyi, py::arg("max_prefix_len"), py::arg("max_digit"),
        py::arg("max_future_len") = 0, py::arg("include_pairs") = false);
  m.def("derive_seed", &cflab::derive_seed, py::arg("seed"), py::arg("index"));
  m.attr("__version__") = cflab::tool_version();
}
