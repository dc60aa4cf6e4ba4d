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


// Reference implementations used only by the tests. They are written from
// first principles and share no code with the library internals.

#ifndef SCISSORSIM_TESTS_ORACLES_H_
#define SCISSORSIM_TESTS_ORACLES_H_

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "scissorsim/fock.h"

namespace oracle {

using scissorsim::Complex;

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Ryser's formula.
inline Complex permanent(const Eigen::MatrixXcd &a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  Complex total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (mask & (1u << j)) row += a(i, j);
      }
      prod *= row;
    }
    total += (__builtin_popcount(mask) % 2 == n % 2 ? 1.0 : -1.0) * prod;
  }
  return total;
}

// <out| U_fock |in> for a passive interferometer whose single-particle matrix
// maps input mode k to sum_j u(j, k) a_j^dagger.
inline Complex transition_amplitude(const Eigen::MatrixXcd &u, const std::vector<int> &in,
                                    const std::vector<int> &out) {
  int n_in = 0, n_out = 0;
  for (int x : in) n_in += x;
  for (int x : out) n_out += x;
  if (n_in != n_out) return 0.0;
  std::vector<int> rows, cols;
  for (std::size_t j = 0; j < out.size(); ++j) rows.insert(rows.end(), out[j], static_cast<int>(j));
  for (std::size_t k = 0; k < in.size(); ++k) cols.insert(cols.end(), in[k], static_cast<int>(k));
  Eigen::MatrixXcd sub(n_in, n_in);
  for (int i = 0; i < n_in; ++i) {
    for (int k = 0; k < n_in; ++k) sub(i, k) = u(rows[i], cols[k]);
  }
  double norm = 1.0;
  for (int x : in) norm *= factorial(x);
  for (int x : out) norm *= factorial(x);
  return permanent(sub) / std::sqrt(norm);
}

// Full Fock-space unitary of a single-particle matrix on all modes of `basis`.
inline Eigen::MatrixXcd fock_unitary(const scissorsim::FockBasis &basis, const Eigen::MatrixXcd &u) {
  Eigen::MatrixXcd op(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) op(r, c) = transition_amplitude(u, basis[c], basis[r]);
  }
  return op;
}

// Partial trace by summing over every pair of basis states that agree on
// the traced modes.
inline Eigen::MatrixXcd partial_trace_loops(const scissorsim::DensityOperator &rho, const std::vector<int> &keep,
                                            const scissorsim::FockBasis &reduced) {
  const auto &basis = *rho.basis;
  std::vector<bool> kept(basis.num_modes(), false);
  for (int m : keep) kept[m] = true;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(reduced.size(), reduced.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      bool same_env = true;
      std::vector<int> ki, kj;
      for (int m = 0; m < basis.num_modes(); ++m) {
        if (kept[m]) {
          ki.push_back(basis[i][m]);
          kj.push_back(basis[j][m]);
        } else if (basis[i][m] != basis[j][m]) {
          same_env = false;
        }
      }
      if (!same_env) continue;
      auto a = reduced.index_of(ki);
      auto b = reduced.index_of(kj);
      out(*a, *b) += rho.matrix(i, j);
    }
  }
  return out;
}

inline Eigen::VectorXcd random_vector(std::size_t n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v.normalized();
}

inline scissorsim::FockState random_state(int modes, int cutoff, std::mt19937_64 &rng) {
  auto basis = scissorsim::FockBasis::get(modes, cutoff);
  return {basis, random_vector(basis->size(), rng)};
}

inline scissorsim::DensityOperator random_density(int modes, int cutoff, int rank, std::mt19937_64 &rng) {
  auto basis = scissorsim::FockBasis::get(modes, cutoff);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis->size(), basis->size());
  std::uniform_real_distribution<double> w(0.1, 1.0);
  for (int r = 0; r < rank; ++r) {
    auto v = random_vector(basis->size(), rng);
    m += w(rng) * v * v.adjoint();
  }
  return {basis, m / m.trace().real()};
}

inline Eigen::Matrix2cd random_qubit_density(std::mt19937_64 &rng) {
  auto a = random_vector(2, rng);
  auto b = random_vector(2, rng);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  const double w = p(rng);
  return w * a * a.adjoint() + (1.0 - w) * b * b.adjoint();
}

inline Eigen::Matrix2cd random_unitary2(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  return qr.householderQ();
}

}  // namespace oracle

#endif  // SCISSORSIM_TESTS_ORACLES_H_
