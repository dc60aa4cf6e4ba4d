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

#include "scissorsim/io.h"

#include <fstream>
#include <set>
#include <stdexcept>

namespace scissorsim {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json &j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::MatrixXcd matrix_from(const Json &re, const Json &im, std::size_t dim) {
  if (!re.is_array() || !im.is_array() || re.size() != dim || im.size() != dim) {
    throw std::invalid_argument("density matrix: re/im must be " + std::to_string(dim) + " rows");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (re[i].size() != dim || im[i].size() != dim) throw std::invalid_argument("density matrix: ragged row");
    for (std::size_t k = 0; k < dim; ++k) m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return m;
}

void matrix_to(Json &j, const Eigen::MatrixXcd &m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), c = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
}

}  // namespace

Json to_json(const DensityOperator &rho) {
  Json j;
  j["modes"] = rho.num_modes();
  j["cutoff"] = rho.cutoff();
  j["basis"] = rho.basis->states();
  matrix_to(j, rho.matrix);
  return j;
}

DensityOperator density_from_json(const Json &j) {
  const int modes = j.at("modes").get<int>();
  const int cutoff = j.at("cutoff").get<int>();
  auto basis = FockBasis::get(modes, cutoff);
  auto listed = j.at("basis").get<std::vector<Occupation>>();
  if (listed != basis->states()) {
    throw std::invalid_argument("density operator: basis does not match the canonical ordering");
  }
  return DensityOperator{basis, matrix_from(j.at("re"), j.at("im"), basis->size())};
}

Json to_json(const QubitState &q) {
  Json j;
  j["modes"] = 2;
  j["basis"] = Json::array({Json::array({1, 0}), Json::array({0, 1})});
  matrix_to(j, q.matrix);
  j["vacuum_weight"] = q.vacuum_weight;
  return j;
}

QubitState qubit_state_from_json(const Json &j) {
  QubitState q;
  q.matrix = matrix_from(j.at("re"), j.at("im"), 2);
  q.vacuum_weight = j.at("vacuum_weight").get<double>();
  return q;
}

Json to_json(const CircuitConfig &c) {
  Json j;
  j["gamma1"] = c.gamma1;
  j["qubit"] = {{"alpha", complex_pair(c.qubit.alpha)}, {"beta", complex_pair(c.qubit.beta)}};
  j["eta_H"] = c.eta_h;
  j["eta_V"] = c.eta_v;
  j["tau"] = c.tau;
  j["delta"] = c.delta;
  j["V1"] = c.v1;
  j["V2"] = c.v2;
  j["eps_det"] = c.eps_det;
  j["eps_path"] = c.eps_path;
  j["cutoff"] = c.cutoff;
  j["number_resolving"] = c.number_resolving;
  j["efficiency_model"] = c.efficiency_model == EfficiencyModel::kPerClick ? "per_click" : "per_photon";
  return j;
}

CircuitConfig config_from_json(const Json &j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  static const std::set<std::string> known{"gamma1", "qubit", "eta_H",   "eta_V",    "tau",    "delta",
                                           "V1",     "V2",    "eps_det", "eps_path", "cutoff", "number_resolving",
                                           "efficiency_model"};
  for (const auto &[key, _] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("config: unknown field '" + key + "'");
  }
  CircuitConfig c;
  auto num = [&](const char *key, double &out) {
    if (j.contains(key)) out = j[key].get<double>();
  };
  num("gamma1", c.gamma1);
  num("eta_H", c.eta_h);
  num("eta_V", c.eta_v);
  num("tau", c.tau);
  num("delta", c.delta);
  num("V1", c.v1);
  num("V2", c.v2);
  num("eps_det", c.eps_det);
  num("eps_path", c.eps_path);
  if (j.contains("cutoff")) c.cutoff = j["cutoff"].get<int>();
  if (j.contains("number_resolving")) c.number_resolving = j["number_resolving"].get<bool>();
  if (j.contains("efficiency_model")) {
    auto m = j["efficiency_model"].get<std::string>();
    if (m == "per_click") {
      c.efficiency_model = EfficiencyModel::kPerClick;
    } else if (m == "per_photon") {
      c.efficiency_model = EfficiencyModel::kPerPhoton;
    } else {
      throw std::invalid_argument("config: efficiency_model must be per_click or per_photon");
    }
  }
  if (j.contains("qubit")) {
    const Json &q = j["qubit"];
    for (const auto &[key, _] : q.items()) {
      if (key != "alpha" && key != "beta") throw std::invalid_argument("config: unknown qubit field '" + key + "'");
    }
    c.qubit = {complex_from(q.at("alpha")), complex_from(q.at("beta"))};
  }
  validate(c);
  return c;
}

Profile profile_from_json(const Json &j) {
  Profile p;
  if (j.contains("config")) {
    for (const auto &[key, _] : j.items()) {
      if (key != "version" && key != "config" && key != "g2") {
        throw std::invalid_argument("profile: unknown field '" + key + "'");
      }
    }
    p.config = config_from_json(j["config"]);
    if (j.contains("version")) p.version = j["version"].get<std::string>();
    if (j.contains("g2")) p.g2_values = j["g2"].get<std::vector<double>>();
  } else {
    p.config = config_from_json(j);
  }
  return p;
}

Json to_json(const Profile &p) {
  Json j;
  j["version"] = p.version;
  j["config"] = to_json(p.config);
  j["g2"] = p.g2_values;
  return j;
}

Profile paper_profile() {
  Profile p;
  p.version = "paper-1";
  p.config.gamma1 = 0.041;
  p.config.tau = 0.45;
  p.config.delta = 1.0;
  p.config.eps_det = 0.5;
  p.config.eps_path = 0.64;
  p.config.v1 = 0.99;
  p.config.v2 = 0.91;
  p.g2_values = {2.08, 3.48, 8.50};
  p.config = with_g2(p.config, p.g2_values[1]);
  return p;
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

}  // namespace scissorsim
