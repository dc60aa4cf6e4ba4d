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

#include "scissorsim/optics.h"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scissorsim {

namespace {

void check_unit_interval(double x, const char *what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

Complex ipow(Complex z, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

}  // namespace

Eigen::Matrix2cd beamsplitter_matrix(double reflectivity, BeamsplitterConvention convention) {
  check_unit_interval(reflectivity, "beamsplitter reflectivity");
  const double r = std::sqrt(reflectivity);
  const double t = std::sqrt(1.0 - reflectivity);
  Eigen::Matrix2cd u;
  switch (convention) {
    case BeamsplitterConvention::kReal:
      u << r, t, t, -r;
      break;
    case BeamsplitterConvention::kSymmetric:
      u << r, Complex(0, t), Complex(0, t), r;
      break;
  }
  return u;
}

Eigen::SparseMatrix<Complex> two_mode_operator(const FockBasis &basis, int mode_a, int mode_b,
                                               const Eigen::Matrix2cd &u) {
  if (mode_a == mode_b) {
    throw std::invalid_argument("two_mode_operator: the two modes must differ");
  }
  if (mode_a < 0 || mode_b < 0 || mode_a >= basis.num_modes() || mode_b >= basis.num_modes()) {
    throw std::invalid_argument("two_mode_operator: mode out of range");
  }
  std::vector<Eigen::Triplet<Complex>> entries;
  Occupation out;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Occupation &in = basis[col];
    const int n = in[mode_a];
    const int m = in[mode_b];
    const int total = n + m;
    if (total == 0) {
      entries.emplace_back(col, col, 1.0);
      continue;
    }
    // (u00 a+ + u10 b+)^n (u01 a+ + u11 b+)^m |0> / sqrt(n! m!)
    std::vector<Complex> coeff(total + 1, Complex{});
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= m; ++j) {
        Complex term = binomial(n, i) * binomial(m, j) * ipow(u(0, 0), i) * ipow(u(1, 0), n - i) *
                       ipow(u(0, 1), j) * ipow(u(1, 1), m - j);
        coeff[i + j] += term;
      }
    }
    const double norm_in = std::sqrt(factorial(n) * factorial(m));
    out = in;
    for (int k = 0; k <= total; ++k) {
      Complex c = coeff[k] * std::sqrt(factorial(k) * factorial(total - k)) / norm_in;
      if (c == Complex{}) continue;
      out[mode_a] = k;
      out[mode_b] = total - k;
      entries.emplace_back(*basis.index_of(out), col, c);
    }
  }
  Eigen::SparseMatrix<Complex> op(basis.size(), basis.size());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

FockState apply_two_mode_unitary(const FockState &psi, int mode_a, int mode_b, const Eigen::Matrix2cd &u) {
  auto op = two_mode_operator(*psi.basis, mode_a, mode_b, u);
  return FockState{psi.basis, op * psi.amplitudes};
}

DensityOperator apply_two_mode_unitary(const DensityOperator &rho, int mode_a, int mode_b,
                                       const Eigen::Matrix2cd &u) {
  auto op = two_mode_operator(*rho.basis, mode_a, mode_b, u);
  Eigen::MatrixXcd left = op * rho.matrix;
  Eigen::MatrixXcd out = left * Eigen::SparseMatrix<Complex>(op.adjoint());
  return DensityOperator{rho.basis, std::move(out)};
}

FockState apply_beamsplitter(const FockState &psi, const BeamsplitterSpec &spec) {
  return apply_two_mode_unitary(psi, spec.mode_a, spec.mode_b,
                                beamsplitter_matrix(spec.reflectivity, spec.convention));
}

DensityOperator apply_beamsplitter(const DensityOperator &rho, const BeamsplitterSpec &spec) {
  return apply_two_mode_unitary(rho, spec.mode_a, spec.mode_b,
                                beamsplitter_matrix(spec.reflectivity, spec.convention));
}

DensityOperator apply_phase(const DensityOperator &rho, int mode, double phi) {
  if (mode < 0 || mode >= rho.num_modes()) {
    throw std::invalid_argument("apply_phase: mode out of range");
  }
  DensityOperator out = rho;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      int dn = (*rho.basis)[i][mode] - (*rho.basis)[j][mode];
      if (dn != 0) out.matrix(i, j) *= std::polar(1.0, phi * dn);
    }
  }
  return out;
}

DensityOperator loss_channel(const DensityOperator &rho, int mode, double transmission) {
  check_unit_interval(transmission, "loss_channel transmission");
  if (mode < 0 || mode >= rho.num_modes()) {
    throw std::invalid_argument("loss_channel: mode out of range");
  }
  const int env = rho.num_modes();
  auto widened = tensor(rho, to_density(make_vacuum(1, 0)), rho.cutoff());
  widened = apply_beamsplitter(widened, {transmission, mode, env, BeamsplitterConvention::kReal});
  std::vector<int> keep(env);
  std::iota(keep.begin(), keep.end(), 0);
  return partial_trace(widened, keep);
}

DetectorPovm detector_povm(const DetectorModel &model, int max_photons) {
  check_unit_interval(model.efficiency, "detector efficiency");
  const double d = model.efficiency;
  DetectorPovm povm;
  povm.no_click.resize(max_photons + 1);
  povm.click.resize(max_photons + 1);
  povm.multi.assign(max_photons + 1, 0.0);
  for (int n = 0; n <= max_photons; ++n) {
    if (model.efficiency_model == EfficiencyModel::kPerPhoton) {
      povm.no_click[n] = std::pow(1.0 - d, n);
      if (model.number_resolving) {
        povm.click[n] = n == 0 ? 0.0 : d * n * std::pow(1.0 - d, n - 1);
        povm.multi[n] = 1.0 - povm.no_click[n] - povm.click[n];
      } else {
        povm.click[n] = 1.0 - povm.no_click[n];
      }
    } else {
      povm.no_click[n] = n == 0 ? 1.0 : 1.0 - d;
      if (model.number_resolving) {
        povm.click[n] = n == 1 ? d : 0.0;
        povm.multi[n] = n >= 2 ? d : 0.0;
      } else {
        povm.click[n] = n == 0 ? 0.0 : d;
      }
    }
  }
  return povm;
}

FockState embed_distinguishability(double visibility, int cutoff) {
  check_unit_interval(visibility, "HOM visibility");
  std::array<int, 2> matched{1, 0}, orthogonal{0, 1};
  FockState out = make_basis_state(2, cutoff, matched);
  out.amplitudes *= std::sqrt(visibility);
  out.amplitudes += std::sqrt(1.0 - visibility) * make_basis_state(2, cutoff, orthogonal).amplitudes;
  return out;
}

double hom_coincidence_probability(double visibility, BeamsplitterConvention convention) {
  // Modes: 0 signal/matched, 1 signal/orthogonal, 2 ancilla/matched, 3 ancilla/orthogonal.
  std::array<int, 2> one{1, 0};
  FockState signal = make_basis_state(2, 1, one);
  FockState ancilla = embed_distinguishability(visibility, 1);
  FockState joint = tensor(signal, ancilla, 2);
  joint = apply_beamsplitter(joint, {0.5, 0, 2, convention});
  joint = apply_beamsplitter(joint, {0.5, 1, 3, convention});
  double coincidence = 0.0;
  for (std::size_t i = 0; i < joint.basis->size(); ++i) {
    const auto &occ = (*joint.basis)[i];
    if (occ[0] + occ[1] > 0 && occ[2] + occ[3] > 0) coincidence += std::norm(joint.amplitudes[i]);
  }
  return coincidence;
}

double hom_visibility(double visibility, BeamsplitterConvention convention) {
  return 1.0 - hom_coincidence_probability(visibility, convention) / hom_coincidence_probability(0.0, convention);
}

}  // namespace scissorsim
