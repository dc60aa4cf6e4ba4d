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

#ifndef SCISSORSIM_HARNESS_H_
#define SCISSORSIM_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scissorsim/amplifier.h"
#include "scissorsim/io.h"
#include "scissorsim/tomography.h"

namespace scissorsim {

enum class RunMode { kExact, kSampled };

std::string to_string(RunMode mode);
RunMode parse_run_mode(std::string_view text);

struct ExperimentPlan {
  CircuitConfig config;
  std::int64_t n_pulses = 1'000'000;  ///< per (input, analyzer basis) setting, for each of amp and no-amp
  std::uint64_t seed = 1;
  RunMode mode = RunMode::kExact;
  std::vector<Polarization> inputs{kAllPolarizations.begin(), kAllPolarizations.end()};
  /// Optional multiplicative click-probability factors for "D1" ... "D6".
  std::map<std::string, double> detector_efficiency;
  /// Applied to every reconstructed amplified state before fidelities.
  std::optional<Eigen::Matrix2cd> correction;
};

void validate(const ExperimentPlan &plan);

struct PolarizationReport {
  Polarization input = Polarization::kH;
  QubitState reconstructed;        ///< amplified output
  QubitState reconstructed_input;  ///< no-amp reference run
  QubitState model;                ///< exact qubit block of the simulated output
  double fidelity_input = 0.0;     ///< <psi| rho_in |psi> from the reference run
  double fidelity_qubit = 0.0;     ///< qubit-subspace fidelity of the output
  double fidelity_output = 0.0;    ///< (1 - vacuum weight) * fidelity_qubit
  CountsRecord amp;                ///< pooled over bases and herald patterns
  CountsRecord noamp;
  GainEstimate gain;
  std::vector<CountsRow> amp_rows;
  std::vector<CountsRow> noamp_rows;
};

struct RunReport {
  ExperimentPlan plan;
  AnalyticOutput analytic;
  double g_nom = 0.0;
  GainEstimate gain;                         ///< pooled over every input
  double success_probability = 0.0;          ///< simulated heralding probability (all four patterns)
  double success_probability_estimate = 0.0; ///< C3 amp / C3 no-amp
  double mean_fidelity_input = 0.0;
  double mean_fidelity_output = 0.0;
  std::vector<PolarizationReport> inputs;
};

/// Simulates amplified and reference runs for every input polarization and
/// analyzer basis, then reconstructs states and gains from the counts.
RunReport run_experiment(const ExperimentPlan &plan);

Json to_json(const RunReport &report);

/// Multinomial draw by sequential binomials. Probabilities are clamped at 0
/// and the last category takes whatever remains.
std::vector<std::int64_t> sample_multinomial(std::int64_t n, std::span<const double> probs, std::mt19937_64 &rng);

/// One checked number of a reproduction. Informational comparisons are
/// reported but do not decide the overall result.
struct Comparison {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool gating = true;
  bool passed = false;
  std::string note;
};

Comparison compare(std::string name, double value, double reference, double tolerance, bool gating = true,
                   std::string note = {});

struct ReproductionReport {
  std::string name;
  Json table = Json::array();
  std::vector<Comparison> comparisons;

  bool passed() const;
};

Json to_json(const ReproductionReport &report);

/// Nominal and measured gains at each profile gain, with the ideal
/// (unsaturated) and the fitted-source (saturated) models.
ReproductionReport reproduce_table1(const Profile &profile = paper_profile());

/// Input, qubit-subspace and output fidelities for |R> at each profile gain,
/// with V2 fitted at the top gain (V1 held fixed).
ReproductionReport reproduce_table2(const Profile &profile = paper_profile());

/// Vacuum and qubit-subspace populations for |R> with and without
/// amplification at each profile gain.
ReproductionReport reproduce_fig3(const Profile &profile = paper_profile());

/// Qubit-subspace fidelity of the simulated |config.qubit> output.
double model_qubit_fidelity(const CircuitConfig &config);

/// V2 in [0, 1] for which model_qubit_fidelity equals `target` (bisection).
double fit_v2(const CircuitConfig &config, double target);

enum class SweepParameter { kG2, kTau, kDelta, kGamma1, kV };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view text);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kG2;
  double from = 1.0;
  double to = 10.0;
  int points = 25;
  bool log = false;
};

struct SweepRow {
  double value = 0.0;
  AnalyticOutput analytic;
  double sim_success_probability = 0.0;
  double sim_vacuum_weight = 0.0;
  double sim_qubit_weight = 0.0;
  double sim_purity = 0.0;           ///< qubit-subspace purity
  double sim_qubit_fidelity = 0.0;   ///< against config.qubit
  double sim_vacuum_coherence = 0.0;
};

/// Grid of `points` values (geometric when `log`), analytic and simulated.
std::vector<SweepRow> sweep(const SweepSpec &spec, const CircuitConfig &base);
CircuitConfig with_parameter(CircuitConfig config, SweepParameter p, double value);
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows, SweepParameter p);

}  // namespace scissorsim

#endif  // SCISSORSIM_HARNESS_H_
