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

#ifndef SCISSORSIM_IO_H_
#define SCISSORSIM_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scissorsim/amplifier.h"
#include "scissorsim/fock.h"
#include "scissorsim/tomography.h"

namespace scissorsim {

using Json = nlohmann::ordered_json;

/// {"modes", "cutoff", "basis", "re", "im"}. Doubles are written with full
/// precision so that parsing restores the matrix bit for bit.
Json to_json(const DensityOperator &rho);
DensityOperator density_from_json(const Json &j);

/// 2x2 density-operator object on (H, V) plus "vacuum_weight".
Json to_json(const QubitState &q);
QubitState qubit_state_from_json(const Json &j);

/// Field names: gamma1, qubit {alpha: [re, im], beta: [re, im]}, eta_H, eta_V,
/// tau, delta, V1, V2, eps_det, eps_path, cutoff, number_resolving,
/// efficiency_model ("per_click" | "per_photon"). Missing fields keep their
/// defaults; unknown fields throw.
Json to_json(const CircuitConfig &config);
CircuitConfig config_from_json(const Json &j);

/// Fitted parameter set with the gain settings it was fitted at.
struct Profile {
  std::string version = "1";
  CircuitConfig config;
  std::vector<double> g2_values;
};

/// A profile file is either a plain CircuitConfig object or
/// {"version", "config", "g2"}.
Profile profile_from_json(const Json &j);
Json to_json(const Profile &profile);

/// The parameter set fitted to the published experiment.
Profile paper_profile();

Json read_json_file(const std::string &path);

}  // namespace scissorsim

#endif  // SCISSORSIM_IO_H_
