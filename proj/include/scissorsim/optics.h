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

#ifndef SCISSORSIM_OPTICS_H_
#define SCISSORSIM_OPTICS_H_

#include <vector>

#include <Eigen/Sparse>

#include "scissorsim/fock.h"

namespace scissorsim {

/// Phase convention of a two-mode beamsplitter with reflectivity eta.
///
/// kReal:      a+ -> sqrt(eta) a+ + sqrt(1-eta) b+,  b+ -> sqrt(1-eta) a+ - sqrt(eta) b+
/// kSymmetric: a+ -> sqrt(eta) a+ + i sqrt(1-eta) b+, b+ -> i sqrt(1-eta) a+ + sqrt(eta) b+
enum class BeamsplitterConvention { kReal, kSymmetric };

struct BeamsplitterSpec {
  double reflectivity = 0.5;
  int mode_a = 0;
  int mode_b = 1;
  BeamsplitterConvention convention = BeamsplitterConvention::kReal;
};

/// Single-particle transfer matrix; column k is the image of input mode k.
Eigen::Matrix2cd beamsplitter_matrix(double reflectivity,
                                     BeamsplitterConvention convention = BeamsplitterConvention::kReal);

/// Fock-space representation of a passive two-mode transformation given by
/// the single-particle unitary `u` acting on (mode_a, mode_b).
Eigen::SparseMatrix<Complex> two_mode_operator(const FockBasis &basis, int mode_a, int mode_b,
                                               const Eigen::Matrix2cd &u);

FockState apply_two_mode_unitary(const FockState &psi, int mode_a, int mode_b, const Eigen::Matrix2cd &u);
DensityOperator apply_two_mode_unitary(const DensityOperator &rho, int mode_a, int mode_b,
                                       const Eigen::Matrix2cd &u);

FockState apply_beamsplitter(const FockState &psi, const BeamsplitterSpec &spec);
DensityOperator apply_beamsplitter(const DensityOperator &rho, const BeamsplitterSpec &spec);

/// Multiplies every photon in `mode` by exp(i phi).
DensityOperator apply_phase(const DensityOperator &rho, int mode, double phi);

/// Transmits `mode` with probability `transmission` per photon: beamsplitter
/// to a fresh environment mode followed by tracing the environment out.
DensityOperator loss_channel(const DensityOperator &rho, int mode, double transmission);

enum class EfficiencyModel {
  /// Each arriving photon is registered independently with probability delta.
  kPerPhoton,
  /// A nonempty photon packet is registered with probability delta, whatever
  /// its photon number.
  kPerClick,
};

struct DetectorModel {
  double efficiency = 1.0;
  bool number_resolving = false;
  EfficiencyModel efficiency_model = EfficiencyModel::kPerPhoton;
};

/// Diagonal POVM of one detector, indexed by the photon number n reaching it.
/// For threshold detectors `click` = 1 - `no_click` and `multi` = 0. For
/// number-resolving detectors `click` registers exactly one photon and `multi`
/// registers two or more.
struct DetectorPovm {
  std::vector<double> no_click;
  std::vector<double> click;
  std::vector<double> multi;
};

DetectorPovm detector_povm(const DetectorModel &model, int max_photons);

/// Ancilla photon with HOM visibility V against the signal: amplitude sqrt(V)
/// in the matched mode (mode 0) and sqrt(1-V) in an orthogonal mode (mode 1).
FockState embed_distinguishability(double visibility, int cutoff = 3);

/// Two-photon coincidence probability at a 50/50 beamsplitter between a
/// signal photon and an `embed_distinguishability(visibility)`.
double hom_coincidence_probability(double visibility,
                                   BeamsplitterConvention convention = BeamsplitterConvention::kReal);

/// 1 - C(visibility) / C(fully distinguishable).
double hom_visibility(double visibility, BeamsplitterConvention convention = BeamsplitterConvention::kReal);

}  // namespace scissorsim

#endif  // SCISSORSIM_OPTICS_H_
