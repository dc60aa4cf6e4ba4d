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

#ifndef SCISSORSIM_AMPLIFIER_H_
#define SCISSORSIM_AMPLIFIER_H_

#include <numbers>
#include <string>
#include <vector>

#include "scissorsim/fock.h"
#include "scissorsim/optics.h"

namespace scissorsim {

/// Physical parameters of the two-stage polarization-qubit amplifier.
///
/// Modes of every two-mode state produced here are ordered (H, V).
struct CircuitConfig {
  double gamma1 = 0.041;  ///< single-photon weight of the input; vacuum weight is 1 - gamma1
  QubitAmplitudes qubit{Complex(1.0 / std::numbers::sqrt2, 0.0), Complex(0.0, -1.0 / std::numbers::sqrt2)};  ///< |R>
  double eta_h = 0.5;  ///< central beamsplitter reflectivity, H stage
  double eta_v = 0.5;  ///< central beamsplitter reflectivity, V stage
  double tau = 1.0;    ///< ancilla source efficiency
  double delta = 1.0;  ///< herald detector efficiency
  double v1 = 1.0;     ///< HOM visibility signal/ancilla, V stage (first)
  double v2 = 1.0;     ///< HOM visibility signal/ancilla, H stage (second)
  double eps_det = 0.5;
  double eps_path = 0.64;
  int cutoff = 3;
  bool number_resolving = false;
  EfficiencyModel efficiency_model = EfficiencyModel::kPerClick;
};

/// Throws std::invalid_argument when a parameter is out of range.
void validate(const CircuitConfig &config);

double g2_from_eta(double eta);
double eta_from_g2(double g2);

/// Copy of `config` with both stages set to amplitude gain g = sqrt(g2).
CircuitConfig with_g2(CircuitConfig config, double g2);

DetectorModel herald_detector(const CircuitConfig &config);

/// Which herald detectors fired. stage1 is 1 or 2 (D1/D2, V stage), stage2 is
/// 3 or 4 (D3/D4, H stage); both are 0 for the fail outcome.
struct HeraldPattern {
  int stage1 = 0;
  int stage2 = 0;
  bool success = false;

  std::string label() const;  ///< "D1D3" ... or "fail"
};

struct HeraldedOutcome {
  HeraldPattern pattern;
  double probability = 0.0;
  DensityOperator output;  ///< normalized conditional state on the output modes
};

/// Parameters of one generalized-scissors stage.
struct StageParams {
  double eta = 0.5;
  double tau = 1.0;
  double visibility = 1.0;
  DetectorModel detector;
  BeamsplitterConvention convention = BeamsplitterConvention::kReal;
  bool phase_correction = true;
};

/// One herald branch of a stage. `detector` is 0 or 1 for a click in only the
/// first or only the second herald detector, and -1 for every other outcome.
struct StageBranch {
  int detector = -1;
  DensityOperator state;  ///< un-normalized; its trace is the branch probability
};

/// Runs one stage on `signal_mode` of `rho`: an ancilla photon (present with
/// probability tau) is split by the variable beamsplitter into the stage
/// output and a herald arm; the herald arm meets the signal at a 50/50
/// beamsplitter whose two ports feed the herald detectors.
///
/// In the returned states the signal mode is replaced by the stage output.
/// When visibility < 1 the output's orthogonal internal mode is appended as
/// the last mode. Success branches carry the per-detector phase correction
/// (computed from the stage transfer matrix) unless disabled.
std::vector<StageBranch> run_stage(const DensityOperator &rho, int signal_mode, const StageParams &params);

/// Single-mode amplifier stage: outcomes for the first detector, the second
/// detector and fail, with normalized outputs on one mode.
std::vector<HeraldedOutcome> nla_stage(const DensityOperator &rho, const StageParams &params);

/// alpha|1,0> + beta|0,1> on modes (H, V).
FockState qubit_state(const QubitAmplitudes &qubit, int cutoff);

/// gamma0|00><00| + gamma1|psi><psi| built by polarization-independent loss.
DensityOperator build_input(const CircuitConfig &config);

struct AmplifierResult {
  std::vector<HeraldedOutcome> outcomes;  ///< D1D3, D1D4, D2D3, D2D4, fail
  DensityOperator output;                 ///< mixture of the four success outputs, normalized
  double success_probability = 0.0;
};

/// Brute-force Fock simulation of the full circuit: V stage (D1/D2) then H
/// stage (D3/D4), with source, detector and mode-matching imperfections.
AmplifierResult qubit_amplifier(const CircuitConfig &config,
                                BeamsplitterConvention convention = BeamsplitterConvention::kReal);

/// Closed-form amplifier output for perfect mode matching (v1, v2 ignored).
///
/// With b the herald weight of a bunched two-photon packet relative to a
/// single photon (1 for the default threshold detector), each stage with
/// the signal photon adds vacuum weight L = b + (1 - tau)(1 + g^2)/tau. For
/// unequal stages g2, l and n are the |alpha|^2/|beta|^2-weighted averages.
struct AnalyticOutput {
  double g2 = 0.0;
  double n = 0.0;  ///< gamma0 + g2 gamma1
  double l = 0.0;
  double vacuum_weight = 0.0;
  double qubit_weight = 0.0;
  double g_nom = 0.0;
  double success_probability = 0.0;  ///< all four herald patterns
  double pattern_probability = 0.0;  ///< one herald pattern
  Eigen::Matrix2cd qubit;            ///< normalized qubit-subspace state, basis (H, V)
};

AnalyticOutput analytic_model(const CircuitConfig &config);

/// Herald weight of a bunched photon pair relative to a single photon.
double bunching_weight(const DetectorModel &detector);

/// g2 / (gamma0 + g2 gamma1).
double gain_nominal(double g2, double gamma1);

/// Qubit weight of the output divided by gamma1.
double gain_saturated(const CircuitConfig &config);

}  // namespace scissorsim

#endif  // SCISSORSIM_AMPLIFIER_H_
