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


#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "scissorsim/amplifier.h"
#include "scissorsim/harness.h"
#include "scissorsim/tomography.h"

namespace scissorsim {
namespace {

Eigen::Vector2cd ket(Polarization p) {
  auto a = polarization_amplitudes(p);
  return {a.alpha, a.beta};
}

DensityOperator two_mode(const Eigen::Matrix2cd &qubit, double vacuum) {
  auto b = FockBasis::get(2, 1);  // |00>, |01>, |10>
  DensityOperator rho{b, Eigen::MatrixXcd::Zero(3, 3)};
  std::array<int, 2> h{1, 0}, v{0, 1};
  const std::size_t ih = *b->index_of(h), iv = *b->index_of(v);
  rho.matrix(0, 0) = vacuum;
  rho.matrix(ih, ih) = (1 - vacuum) * qubit(0, 0);
  rho.matrix(ih, iv) = (1 - vacuum) * qubit(0, 1);
  rho.matrix(iv, ih) = (1 - vacuum) * qubit(1, 0);
  rho.matrix(iv, iv) = (1 - vacuum) * qubit(1, 1);
  return rho;
}

std::vector<BasisCounts> exact_counts(const Eigen::Matrix2cd &qubit, double vacuum, double scale = 1.0) {
  std::vector<BasisCounts> out;
  auto rho = two_mode(qubit, vacuum);
  for (Basis b : kAllBases) {
    auto p = measurement_probs(rho, b);
    out.push_back({b, scale * p.d5, scale * p.d6, scale * p.none});
  }
  return out;
}

// Uhlmann fidelity through matrix square roots.
double uhlmann(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
  auto sqrtm = [](const Eigen::Matrix2cd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Eigen::Matrix2cd(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
  };
  Eigen::Matrix2cd s = sqrtm(a);
  Eigen::Matrix2cd inner = sqrtm(s * b * s);
  const double t = inner.trace().real();
  return t * t;
}

TEST(Analyzer, Examples) {
  auto h = measurement_probs(two_mode(ket(Polarization::kH) * ket(Polarization::kH).adjoint(), 0.0), Basis::kHV);
  EXPECT_NEAR(h.d5, 1.0, 1e-15);
  EXPECT_NEAR(h.d6, 0.0, 1e-15);
  EXPECT_NEAR(h.none, 0.0, 1e-15);

  const double w = 0.37;
  auto r = measurement_probs(two_mode(ket(Polarization::kR) * ket(Polarization::kR).adjoint(), w), Basis::kRL);
  EXPECT_NEAR(r.d5, 1 - w, 1e-15);
  EXPECT_NEAR(r.d6, 0.0, 1e-15);
  EXPECT_NEAR(r.none, w, 1e-15);
}

TEST(Analyzer, SimulatedOutputInDiagonalBasis) {
  CircuitConfig c = with_g2(CircuitConfig{}, 3.48);
  c.tau = c.delta = c.v1 = c.v2 = 1.0;
  auto rho = qubit_amplifier(c).output;
  auto p = measurement_probs(rho, Basis::kDA);
  EXPECT_NEAR(p.d5 + p.d6 + p.none, 1.0, 1e-12);
  std::array<int, 2> h{1, 0}, v{0, 1};
  const Complex hh = rho.element(h, h), vv = rho.element(v, v), hv = rho.element(h, v);
  EXPECT_NEAR(p.d5, 0.5 * (hh + vv).real() + hv.real(), 1e-12);
  EXPECT_NEAR(p.d6, 0.5 * (hh + vv).real() - hv.real(), 1e-12);
}

TEST(Analyzer, RejectsMultiPhotonStates) {
  std::array<int, 2> two{1, 1};
  EXPECT_THROW(measurement_probs(to_density(make_basis_state(2, 2, two)), Basis::kHV), std::invalid_argument);
}

TEST(Reconstruction, ExactProbabilities) {
  const Eigen::Matrix2cd r = ket(Polarization::kR) * ket(Polarization::kR).adjoint();
  auto counts = exact_counts(r, 0.2);
  auto q = reconstruct_qubit(counts);
  EXPECT_LT((q.matrix - r).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(q.vacuum_weight, 0.2, 1e-12);

  auto mixed = reconstruct_qubit(exact_counts(Eigen::Matrix2cd::Identity() / 2.0, 0.0));
  EXPECT_LT((mixed.matrix - Eigen::Matrix2cd::Identity() / 2.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Reconstruction, RandomStates) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix2cd rho = oracle::random_qubit_density(rng);
    const double vac = u(rng);
    auto q = reconstruct_qubit(exact_counts(rho, vac, 1e4), 1.0);
    EXPECT_LT((q.matrix - rho).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(q.vacuum_weight, vac, 1e-9);
  }
}

TEST(Reconstruction, DetectionEfficiencyRescalesVacuum) {
  auto counts = exact_counts(ket(Polarization::kD) * ket(Polarization::kD).adjoint(), 0.5);
  for (auto &c : counts) {
    c.none += 0.68 * (c.d5 + c.d6);
    c.d5 *= 0.32;
    c.d6 *= 0.32;
  }
  EXPECT_NEAR(reconstruct_qubit(counts, 0.32).vacuum_weight, 0.5, 1e-12);
}

TEST(Reconstruction, ProjectsToPhysicalStates) {
  std::vector<BasisCounts> counts{{Basis::kHV, 100, 0, 0}, {Basis::kDA, 100, 0, 0}, {Basis::kRL, 100, 0, 0}};
  auto q = reconstruct_qubit(counts);
  EXPECT_LE(bloch_vector(q.matrix).norm(), 1.0 + 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(q.matrix);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  EXPECT_NEAR(q.matrix.trace().real(), 1.0, 1e-10);
}

TEST(Reconstruction, Errors) {
  std::vector<BasisCounts> counts{{Basis::kHV, 10, 5, 0}, {Basis::kDA, 0, 0, 50}, {Basis::kRL, 4, 4, 0}};
  EXPECT_THROW(reconstruct_qubit(counts), std::invalid_argument);
  counts.pop_back();
  counts[1] = {Basis::kDA, 3, 3, 0};
  EXPECT_THROW(reconstruct_qubit(counts), std::invalid_argument);
}

TEST(Reconstruction, FiniteSampleCircularState) {
  const Eigen::Vector2cd r = ket(Polarization::kR);
  const Eigen::Matrix2cd rho = r * r.adjoint();
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<BasisCounts> counts;
    for (Basis b : kAllBases) {
      auto p = measurement_probs(two_mode(rho, 0.0), b);
      std::array<double, 2> probs{p.d5, p.d6};
      auto n = sample_multinomial(10000, probs, rng);
      counts.push_back({b, static_cast<double>(n[0]), static_cast<double>(n[1]), 0.0});
    }
    good += state_fidelity(reconstruct_qubit(counts).matrix, r) >= 0.99;
  }
  EXPECT_GE(good, 99);
}

TEST(Fidelity, UhlmannClosedForm) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = oracle::random_qubit_density(rng);
    auto b = oracle::random_qubit_density(rng);
    EXPECT_NEAR(state_fidelity(a, b), uhlmann(a, b), 1e-10);
  }
  auto r = ket(Polarization::kR);
  EXPECT_NEAR(state_fidelity(Eigen::Matrix2cd(r * r.adjoint()), r), 1.0, 1e-15);
  EXPECT_NEAR(state_fidelity(Eigen::Matrix2cd(Eigen::Matrix2cd::Identity() / 2.0), r), 0.5, 1e-15);
}

TEST(Fidelity, OutputChain) {
  CircuitConfig c = with_g2(CircuitConfig{}, 8.5);
  c.tau = 0.45;
  c.v1 = 0.99;
  c.v2 = 0.91;
  auto rho = qubit_amplifier(c).output;
  auto q = qubit_subspace(rho);
  const Eigen::Vector2cd psi(c.qubit.alpha, c.qubit.beta);
  EXPECT_NEAR(fidelity(rho, qubit_state(c.qubit, c.cutoff)), (1 - q.vacuum_weight) * state_fidelity(q.matrix, psi),
              1e-10);
}

TEST(Bloch, Axes) {
  auto r = [](Polarization p) {
    auto k = ket(p);
    return bloch_vector(k * k.adjoint());
  };
  EXPECT_NEAR(r(Polarization::kH)[2], 1.0, 1e-15);
  EXPECT_NEAR(r(Polarization::kD)[0], 1.0, 1e-15);
  EXPECT_NEAR(std::abs(r(Polarization::kR)[1]), 1.0, 1e-15);
  EXPECT_NEAR((r(Polarization::kR) + r(Polarization::kL)).norm(), 0.0, 1e-15);
  std::mt19937_64 rng(43);
  auto m = oracle::random_qubit_density(rng);
  EXPECT_LT((from_bloch_vector(bloch_vector(m)) - m).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Counts, GammaEstimate) {
  EXPECT_NEAR(estimate_gamma1(1312, 100000, 0.5, 0.64), 0.0410, 1e-12);
  EXPECT_DOUBLE_EQ(estimate_gamma1(37, 100, 1.0, 1.0), 0.37);
  EXPECT_DOUBLE_EQ(estimate_gamma1(0, 100, 0.5, 0.64), 0.0);
  EXPECT_THROW(estimate_gamma1(0, 0, 0.5, 0.64), std::invalid_argument);
}

TEST(Counts, MeasuredGain) {
  CountsRecord a{1000, 50, {}};
  EXPECT_DOUBLE_EQ(measured_gain(a, a), 1.0);
  CountsRecord b{2000, 300, {}};
  EXPECT_NEAR(measured_gain(b, a), (300.0 / 2000) / (50.0 / 1000), 1e-15);
  EXPECT_NEAR(measured_gain_std_error(b, a) / measured_gain(b, a),
              std::sqrt(1 / 300.0 + 1 / 2000.0 + 1 / 50.0 + 1 / 1000.0), 1e-15);
  EXPECT_THROW(measured_gain(CountsRecord{0, 0, {}}, a), std::invalid_argument);
  EXPECT_THROW(measured_gain(a, CountsRecord{100, 0, {}}), std::invalid_argument);

  std::map<std::string, std::pair<CountsRecord, CountsRecord>> by{{"D1D3", {b, a}}, {"D2D4", {a, a}}};
  auto g = measured_gain(by);
  EXPECT_NEAR(g.per_pattern["D1D3"], 3.0, 1e-12);
  EXPECT_NEAR(g.per_pattern["D2D4"], 1.0, 1e-12);
  EXPECT_NEAR(g.pattern_mean, 2.0, 1e-12);
  EXPECT_NEAR(g.pattern_stddev, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(g.value, (350.0 / 3000) / (100.0 / 2000), 1e-12);
}

TEST(Counts, SuccessProbability) {
  CountsRecord a{500, 10, {}}, b{500, 3, {}};
  EXPECT_DOUBLE_EQ(success_probability_estimate(a, b), 1.0);
  EXPECT_DOUBLE_EQ(success_probability_estimate(CountsRecord{}, b), 0.0);
  EXPECT_THROW(success_probability_estimate(a, CountsRecord{}), std::invalid_argument);
}

TEST(Correction, Examples) {
  QubitState r{ket(Polarization::kR) * ket(Polarization::kR).adjoint(), 0.3};
  auto same = apply_unitary_correction(r, Eigen::Matrix2cd::Identity());
  EXPECT_LT((same.matrix - r.matrix).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  auto l = apply_unitary_correction(r, z);
  EXPECT_NEAR(state_fidelity(l.matrix, ket(Polarization::kL)), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(l.vacuum_weight, 0.3);
  EXPECT_THROW(apply_unitary_correction(r, 2.0 * z), std::invalid_argument);
}

TEST(Correction, FitRecoversMisalignment) {
  std::mt19937_64 rng(44);
  CircuitConfig c = with_g2(CircuitConfig{}, 3.48);
  c.tau = 0.45;
  c.v1 = 0.99;
  c.v2 = 0.91;
  std::vector<Eigen::Matrix2cd> truth, misaligned, ideal;
  for (Polarization p : kAllPolarizations) {
    c.qubit = polarization_amplitudes(p);
    truth.push_back(qubit_subspace(qubit_amplifier(c).output).matrix);
    ideal.push_back(ket(p) * ket(p).adjoint());
  }
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Matrix2cd u = oracle::random_unitary2(rng);
    misaligned.clear();
    for (const auto &m : truth) misaligned.push_back(u * m * u.adjoint());
    const Eigen::Matrix2cd fix = fit_unitary_correction(misaligned, ideal);
    EXPECT_LT((fix.adjoint() * fix - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
    for (std::size_t k = 0; k < truth.size(); ++k) {
      auto corrected = apply_unitary_correction(QubitState{misaligned[k], 0.0}, fix);
      auto p = kAllPolarizations[k];
      EXPECT_NEAR(state_fidelity(corrected.matrix, ket(p)), state_fidelity(truth[k], ket(p)), 1e-6);
    }
  }
}

TEST(CountsCsv, RoundTrip) {
  std::vector<CountsRow> rows{{"HV", "D5", "D1D3", 1200, 40}, {"HV", "D6", "D1D3", 1200, 3.5},
                              {"DA", "D5", "D1D3", 1100, 20}, {"DA", "D6", "D1D3", 1100, 21},
                              {"RL", "D5", "D1D3", 1000, 41}, {"RL", "D6", "D1D3", 1000, 0}};
  std::stringstream ss;
  write_counts_csv(ss, rows);
  auto back = read_counts_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].basis, rows[i].basis);
    EXPECT_EQ(back[i].detector, rows[i].detector);
    EXPECT_EQ(back[i].herald_pattern, rows[i].herald_pattern);
    EXPECT_EQ(back[i].c3, rows[i].c3);
    EXPECT_EQ(back[i].c4, rows[i].c4);
  }
  auto bc = basis_counts(back);
  ASSERT_EQ(bc.size(), 3u);
  EXPECT_DOUBLE_EQ(bc[0].d5, 40);
  EXPECT_DOUBLE_EQ(bc[0].none, 1200 - 43.5);
}

TEST(CountsCsv, RejectsBadInput) {
  std::stringstream few("basis,detector,herald_pattern,C3,C4\nHV,D5,D1D3,10\n");
  EXPECT_THROW(read_counts_csv(few), std::invalid_argument);
  std::stringstream neg("HV,D5,D1D3,10,-1\n");
  EXPECT_THROW(read_counts_csv(neg), std::invalid_argument);
  std::stringstream over("HV,D5,D1D3,10,11\n");
  EXPECT_THROW(read_counts_csv(over), std::invalid_argument);
  std::vector<CountsRow> odd{{"XY", "D5", "D1D3", 10, 1}};
  EXPECT_THROW(basis_counts(odd), std::invalid_argument);
}

}  // namespace
}  // namespace scissorsim
