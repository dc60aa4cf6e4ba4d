// Copyright 2026 The scissorsim Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scissorsim/amplifier.h"
#include "scissorsim/harness.h"
#include "scissorsim/io.h"
#include "scissorsim/optics.h"
#include "scissorsim/tomography.h"

namespace py = pybind11;
using namespace scissorsim;

namespace {

// Configs and reports cross the boundary as JSON text; the Python side
// turns them into dicts.
CircuitConfig config_from(const std::string &text) {
  return text.empty() ? paper_profile().config : config_from_json(Json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fock-space simulator of a heralded polarization-qubit amplifier";

  m.def("gain_nominal", &gain_nominal, py::arg("g2"), py::arg("gamma1"));
  m.def("g2_from_eta", &g2_from_eta, py::arg("eta"));
  m.def("eta_from_g2", &eta_from_g2, py::arg("g2"));
  m.def("hom_visibility", [](double v) { return hom_visibility(v); }, py::arg("visibility"));

  m.def("paper_config", [] { return to_json(paper_profile().config).dump(); });
  m.def("with_g2", [](const std::string &config, double g2) { return to_json(with_g2(config_from(config), g2)).dump(); },
        py::arg("config"), py::arg("g2"));

  m.def(
      "analytic",
      [](const std::string &config) {
        const auto a = analytic_model(config_from(config));
        py::dict d;
        d["g2"] = a.g2;
        d["L"] = a.l;
        d["vacuum_weight"] = a.vacuum_weight;
        d["qubit_weight"] = a.qubit_weight;
        d["G_nom"] = a.g_nom;
        d["success_probability"] = a.success_probability;
        d["qubit"] = Eigen::Matrix2cd(a.qubit);
        return d;
      },
      py::arg("config") = "");

  m.def(
      "simulate",
      [](const std::string &config) {
        const auto r = qubit_amplifier(config_from(config));
        const auto q = qubit_subspace(r.output);
        py::dict d;
        d["success_probability"] = r.success_probability;
        d["vacuum_weight"] = q.vacuum_weight;
        d["qubit"] = Eigen::Matrix2cd(q.matrix);
        d["output"] = Eigen::MatrixXcd(r.output.matrix);
        py::dict patterns;
        for (const auto &o : r.outcomes) patterns[py::str(o.pattern.label())] = o.probability;
        d["patterns"] = patterns;
        return d;
      },
      py::arg("config") = "");

  m.def(
      "run_experiment",
      [](const std::string &config, std::int64_t n_pulses, std::uint64_t seed, const std::string &mode,
         const std::vector<std::string> &inputs) {
        ExperimentPlan plan;
        plan.config = config_from(config);
        plan.n_pulses = n_pulses;
        plan.seed = seed;
        plan.mode = parse_run_mode(mode);
        if (!inputs.empty()) {
          plan.inputs.clear();
          for (const auto &s : inputs) plan.inputs.push_back(parse_polarization(s));
        }
        py::gil_scoped_release release;
        return to_json(run_experiment(plan)).dump();
      },
      py::arg("config") = "", py::arg("n_pulses") = 1'000'000, py::arg("seed") = 1, py::arg("mode") = "exact",
      py::arg("inputs") = std::vector<std::string>{});

  m.def(
      "reproduce",
      [](const std::string &target) {
        ReproductionReport r;
        if (target == "table1") {
          r = reproduce_table1();
        } else if (target == "table2") {
          r = reproduce_table2();
        } else if (target == "fig3") {
          r = reproduce_fig3();
        } else {
          throw std::invalid_argument("unknown reproduction target: " + target);
        }
        return to_json(r).dump();
      },
      py::arg("target"));

  m.def("state_fidelity",
        [](const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) { return state_fidelity(a, b); });
  m.def("project_to_physical", [](const Eigen::MatrixXcd &a) { return project_to_physical(a); });
}
