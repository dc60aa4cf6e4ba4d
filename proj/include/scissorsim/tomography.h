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

#ifndef SCISSORSIM_TOMOGRAPHY_H_
#define SCISSORSIM_TOMOGRAPHY_H_

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scissorsim/fock.h"

namespace scissorsim {

enum class Basis { kHV, kDA, kRL };
enum class Polarization { kH, kV, kD, kA, kR, kL };

inline constexpr std::array<Basis, 3> kAllBases{Basis::kHV, Basis::kDA, Basis::kRL};
inline constexpr std::array<Polarization, 6> kAllPolarizations{
    Polarization::kH, Polarization::kV, Polarization::kD, Polarization::kA, Polarization::kR, Polarization::kL};

std::string to_string(Basis basis);
std::string to_string(Polarization polarization);
Basis parse_basis(std::string_view text);
Polarization parse_polarization(std::string_view text);

QubitAmplitudes polarization_amplitudes(Polarization polarization);

/// Analyzer setting: `plus` is routed to D5, `minus` to D6.
struct PolarizationBasis {
  Basis label;
  Eigen::Vector2cd plus;
  Eigen::Vector2cd minus;
};

PolarizationBasis polarization_basis(Basis basis);

struct AnalyzerProbabilities {
  double d5 = 0.0;
  double d6 = 0.0;
  double none = 0.0;
};

/// Click probabilities of the D5/D6 analyzer for a two-mode (H, V) state with
/// at most one photon, using ideal detectors.
AnalyzerProbabilities measurement_probs(const DensityOperator &rho_out, Basis basis);

/// 2x2 state on {|H>, |V>} plus the weight of the vacuum term.
struct QubitState {
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity() / 2.0;
  double vacuum_weight = 0.0;
};

/// Exact single-photon block of a two-mode (H, V) state, normalized.
QubitState qubit_subspace(const DensityOperator &rho);

/// Detected events for one analyzer basis. Counts are real so that expected
/// (exact-mode) counts can be used directly.
struct BasisCounts {
  Basis basis = Basis::kHV;
  double d5 = 0.0;
  double d6 = 0.0;
  double none = 0.0;
};

/// Linear-inversion reconstruction from the three Stokes parameters, followed
/// by projection onto the nearest physical state. The vacuum weight is taken
/// from the click fraction divided by `detection_efficiency`.
QubitState reconstruct_qubit(std::span<const BasisCounts> counts, double detection_efficiency = 1.0);

/// Frobenius-nearest density matrix by eigenvalue clipping and trace
/// renormalization.
Eigen::MatrixXcd project_to_physical(const Eigen::MatrixXcd &matrix);

/// (<X>, <Y>, <Z>) with Z diagonal in (H, V) and X having |D> as +1 eigenstate.
Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd &rho);
Eigen::Matrix2cd from_bloch_vector(const Eigen::Vector3d &r);

/// Uhlmann fidelity between qubit states.
double state_fidelity(const Eigen::Matrix2cd &rho, const Eigen::Matrix2cd &sigma);
double state_fidelity(const Eigen::Matrix2cd &rho, const Eigen::Vector2cd &psi);
double qubit_purity(const Eigen::Matrix2cd &rho);

/// Three-fold (herald pair + trigger) and four-fold (plus D5 or D6)
/// coincidences.
struct CountsRecord {
  double c3 = 0.0;
  double c4 = 0.0;
  std::map<std::string, double> by_detector;  ///< four-folds per analyzer detector

  CountsRecord &operator+=(const CountsRecord &other);
};

double estimate_gamma1(double c4, double c3, double eps_det, double eps_path);

/// (C4/C3)^amp / (C4/C3)^noamp.
double measured_gain(const CountsRecord &amp, const CountsRecord &noamp);

/// Standard error of measured_gain with sqrt(C) Poisson errors on all counts.
double measured_gain_std_error(const CountsRecord &amp, const CountsRecord &noamp);

struct GainEstimate {
  double value = 0.0;  ///< from counts pooled over every herald combination
  double std_error = 0.0;
  std::map<std::string, double> per_pattern;
  double pattern_mean = 0.0;
  double pattern_stddev = 0.0;
};

/// Gain per herald combination plus pooled value, mean and sample stddev.
GainEstimate measured_gain(const std::map<std::string, std::pair<CountsRecord, CountsRecord>> &by_pattern);

/// C3^amp / C3^noamp.
double success_probability_estimate(const CountsRecord &amp, const CountsRecord &noamp);

/// U rho U^dagger; U must be unitary within 1e-10.
QubitState apply_unitary_correction(const QubitState &q, const Eigen::Matrix2cd &u);

/// Unitary that best maps `measured` states onto `ideal` ones (least squares
/// on Bloch vectors; rotation fitted by SVD).
Eigen::Matrix2cd fit_unitary_correction(std::span<const Eigen::Matrix2cd> measured,
                                        std::span<const Eigen::Matrix2cd> ideal);

/// One line of a counts file: basis,detector,herald_pattern,C3,C4.
struct CountsRow {
  std::string basis;
  std::string detector;
  std::string herald_pattern;
  double c3 = 0.0;
  double c4 = 0.0;
};

std::vector<CountsRow> read_counts_csv(std::istream &in);
void write_counts_csv(std::ostream &out, std::span<const CountsRow> rows);

/// Folds counts rows into per-basis analyzer counts. C3 is taken once per
/// (basis, herald pattern); clicks are the C4 of the D5 and D6 rows.
std::vector<BasisCounts> basis_counts(std::span<const CountsRow> rows);

}  // namespace scissorsim

#endif  // SCISSORSIM_TOMOGRAPHY_H_
