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

#ifndef SCISSORSIM_FOCK_H_
#define SCISSORSIM_FOCK_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace scissorsim {

using Complex = std::complex<double>;
using Occupation = std::vector<int>;

/// All occupation vectors of `num_modes` bosonic modes whose total photon
/// number is at most `cutoff`, in lexicographic order (vacuum first).
///
/// Bases are interned: `FockBasis::get` returns a shared immutable instance,
/// so two states live in the same space iff their basis pointers are equal.
class FockBasis {
 public:
  static std::shared_ptr<const FockBasis> get(int num_modes, int cutoff);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return states_.size(); }
  const Occupation &operator[](std::size_t i) const { return states_[i]; }
  const std::vector<Occupation> &states() const { return states_; }

  /// Index of `occupation`, or nullopt if it is not in this basis.
  std::optional<std::size_t> index_of(std::span<const int> occupation) const;

  FockBasis(int num_modes, int cutoff);

 private:
  std::uint64_t key(std::span<const int> occupation) const;

  int num_modes_;
  int cutoff_;
  std::vector<Occupation> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Pure state: amplitudes over a truncated multimode Fock basis.
struct FockState {
  BasisPtr basis;
  Eigen::VectorXcd amplitudes;

  int num_modes() const { return basis->num_modes(); }
  int cutoff() const { return basis->cutoff(); }
  double norm() const { return amplitudes.norm(); }
  Complex amplitude(std::span<const int> occupation) const;
};

/// Mixed (possibly un-normalized) state. An un-normalized operator carries
/// the probability of the branch that produced it as its trace.
struct DensityOperator {
  BasisPtr basis;
  Eigen::MatrixXcd matrix;

  int num_modes() const { return basis->num_modes(); }
  int cutoff() const { return basis->cutoff(); }
  std::size_t dim() const { return basis->size(); }
  double trace() const { return matrix.trace().real(); }
  Complex element(std::span<const int> row, std::span<const int> col) const;
};

/// Single-photon polarization amplitudes alpha|H> + beta|V>.
struct QubitAmplitudes {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
};

/// Throws std::invalid_argument unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
void validate(const QubitAmplitudes &q);

FockState make_basis_state(int num_modes, int cutoff, std::span<const int> occupations);
FockState make_vacuum(int num_modes, int cutoff);

/// Normalized linear combination; all terms must share a basis.
FockState superpose(std::span<const std::pair<Complex, FockState>> terms);

/// Tensor product on the concatenated mode list. The result's cutoff is
/// `a.cutoff + b.cutoff` unless `cutoff` is given; components above an
/// explicit cap must vanish (within 1e-12) or the call is rejected.
FockState tensor(const FockState &a, const FockState &b, std::optional<int> cutoff = std::nullopt);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b,
                       std::optional<int> cutoff = std::nullopt);

DensityOperator to_density(const FockState &psi);

/// Traces out every mode not in `keep`. Kept modes appear in ascending order.
DensityOperator partial_trace(const DensityOperator &rho, std::span<const int> keep);

/// Generalized partial trace: contracts the `traced` modes against a diagonal
/// weight w(occupation of traced modes). With w == 1 this is partial_trace.
/// Remaining modes keep their relative order; cutoff is unchanged.
DensityOperator trace_out_weighted(const DensityOperator &rho, std::span<const int> traced,
                                   const std::function<double(std::span<const int>)> &weight);

/// Reorders modes: mode `order[k]` of the input becomes mode k of the output.
DensityOperator permute_modes(const DensityOperator &rho, std::span<const int> order);

/// Moves the same state into a space with a different cutoff. Components
/// above a smaller cutoff must vanish (within 1e-12).
DensityOperator with_cutoff(const DensityOperator &rho, int cutoff);

/// Merges groups of modes into single modes: the first mode of each group is
/// kept and the photons of the other ("internal") modes are added to it after
/// tracing out which internal mode they occupied. Every mode must belong to
/// exactly one group. Exact for at most one photon per group; otherwise it
/// preserves photon-number statistics.
DensityOperator merge_modes(const DensityOperator &rho, const std::vector<std::vector<int>> &groups);

/// Returns <psi|rho|psi>, clipped to [0, 1] when within 1e-12 of the range.
double fidelity(const DensityOperator &rho, const FockState &psi);

/// Tr(rho^2) of the normalized operator.
double purity(const DensityOperator &rho);

/// rho / Tr(rho); rejects a (numerically) zero trace.
DensityOperator normalized(const DensityOperator &rho);

double hermiticity_error(const DensityOperator &rho);
double min_eigenvalue(const DensityOperator &rho);

/// Clips eigenvalues in [-tol, 0) to zero and restores the trace. Rejects
/// eigenvalues below -tol.
DensityOperator physicalize(const DensityOperator &rho, double tol = 1e-10);

/// Weight of each total-photon-number sector 0..cutoff.
std::vector<double> sector_populations(const DensityOperator &rho);

/// Largest |rho[vac, n=1 state]| coherence between vacuum and one-photon sector.
double vacuum_coherence(const DensityOperator &rho);

}  // namespace scissorsim

#endif  // SCISSORSIM_FOCK_H_
