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

#include "scissorsim/amplifier.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scissorsim {

namespace {

void check_range(double x, double lo, double hi, bool open_lo, bool open_hi, const char *name) {
  bool ok = (open_lo ? x > lo : x >= lo) && (open_hi ? x < hi : x <= hi);
  if (!ok) {
    throw std::invalid_argument(std::string("CircuitConfig.") + name + " out of range: " + std::to_string(x));
  }
}

// Single-particle transfer matrix of one stage on (signal, ancilla, herald arm).
Eigen::Matrix3cd stage_transfer(double eta, BeamsplitterConvention convention) {
  Eigen::Matrix3cd split = Eigen::Matrix3cd::Identity();
  Eigen::Matrix2cd u = beamsplitter_matrix(eta, convention);
  split(1, 1) = u(0, 0);
  split(1, 2) = u(0, 1);
  split(2, 1) = u(1, 0);
  split(2, 2) = u(1, 1);
  Eigen::Matrix3cd mix = Eigen::Matrix3cd::Identity();
  Eigen::Matrix2cd h = beamsplitter_matrix(0.5, convention);
  mix(0, 0) = h(0, 0);
  mix(0, 2) = h(0, 1);
  mix(2, 0) = h(1, 0);
  mix(2, 2) = h(1, 1);
  return mix * split;
}

// Phase that makes the heralded output alpha|0> + g beta|1> for a click in
// herald port `port` (0: signal port, 2: herald-arm port).
double correction_phase(double eta, BeamsplitterConvention convention, int port) {
  Eigen::Matrix3cd t = stage_transfer(eta, convention);
  return std::arg(t(port, 0) * t(1, 1) / t(port, 1));
}

int total_photons(std::span<const int> occ, std::span<const int> positions) {
  int n = 0;
  for (int p : positions) n += occ[p];
  return n;
}

}  // namespace

void validate(const CircuitConfig &c) {
  check_range(c.gamma1, 0.0, 1.0, false, false, "gamma1");
  check_range(c.eta_h, 0.0, 1.0, true, true, "eta_H");
  check_range(c.eta_v, 0.0, 1.0, true, true, "eta_V");
  check_range(c.tau, 0.0, 1.0, false, false, "tau");
  check_range(c.delta, 0.0, 1.0, false, false, "delta");
  check_range(c.v1, 0.0, 1.0, false, false, "V1");
  check_range(c.v2, 0.0, 1.0, false, false, "V2");
  check_range(c.eps_det, 0.0, 1.0, true, false, "eps_det");
  check_range(c.eps_path, 0.0, 1.0, true, false, "eps_path");
  if (c.cutoff < 3) {
    throw std::invalid_argument("CircuitConfig.cutoff must be at least 3 (signal plus two ancillas)");
  }
  validate(c.qubit);
}

double g2_from_eta(double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("g2_from_eta: eta must lie in [0, 1)");
  return eta / (1.0 - eta);
}

double eta_from_g2(double g2) {
  if (!(g2 >= 0.0) || std::isinf(g2)) throw std::invalid_argument("eta_from_g2: g2 must be finite and >= 0");
  return g2 / (1.0 + g2);
}

CircuitConfig with_g2(CircuitConfig config, double g2) {
  config.eta_h = config.eta_v = eta_from_g2(g2);
  return config;
}

DetectorModel herald_detector(const CircuitConfig &config) {
  return DetectorModel{config.delta, config.number_resolving, config.efficiency_model};
}

std::string HeraldPattern::label() const {
  if (!success) return "fail";
  return "D" + std::to_string(stage1) + "D" + std::to_string(stage2);
}

std::vector<StageBranch> run_stage(const DensityOperator &rho, int signal_mode, const StageParams &params) {
  if (!(params.eta > 0.0 && params.eta < 1.0)) {
    throw std::invalid_argument("nla stage: reflectivity must lie strictly inside (0, 1), got " +
                                std::to_string(params.eta));
  }
  if (!(params.tau >= 0.0 && params.tau <= 1.0)) {
    throw std::invalid_argument("nla stage: source efficiency must lie in [0, 1]");
  }
  const int m = rho.num_modes();
  if (signal_mode < 0 || signal_mode >= m) {
    throw std::invalid_argument("nla stage: signal mode out of range");
  }
  const int cutoff = rho.cutoff();
  const bool orthogonal = params.visibility < 1.0;

  // Ancilla source: tau |photon><photon| + (1 - tau) |vac><vac|.
  const int ancilla_modes = orthogonal ? 2 : 1;
  FockState photon = orthogonal ? embed_distinguishability(params.visibility, 1)
                                : make_basis_state(1, 1, std::array<int, 1>{1});
  DensityOperator ancilla = to_density(photon);
  ancilla.matrix *= params.tau;
  ancilla.matrix += (1.0 - params.tau) * to_density(make_vacuum(ancilla_modes, 1)).matrix;

  // Layout after widening: [input modes][a_m (a_o)][c_m (c_o v_o)].
  const int a_m = m;
  const int a_o = m + 1;
  const int c_m = m + ancilla_modes;
  const int c_o = c_m + 1;
  const int v_o = c_m + 2;
  DensityOperator joint = tensor(rho, ancilla, cutoff);
  joint = tensor(joint, to_density(make_vacuum(orthogonal ? 3 : 1, 0)), cutoff);

  joint = apply_beamsplitter(joint, {params.eta, a_m, c_m, params.convention});
  joint = apply_beamsplitter(joint, {0.5, signal_mode, c_m, params.convention});
  std::vector<int> traced{signal_mode, c_m};
  std::vector<int> first_port{0}, second_port{1};
  if (orthogonal) {
    joint = apply_beamsplitter(joint, {params.eta, a_o, c_o, params.convention});
    joint = apply_beamsplitter(joint, {0.5, v_o, c_o, params.convention});
    traced = {signal_mode, c_m, v_o, c_o};
    first_port = {0, 2};
    second_port = {1, 3};
  }

  const DetectorPovm povm = detector_povm(params.detector, cutoff);
  auto weight_for = [&](int outcome) {
    return [&, outcome](std::span<const int> occ) {
      int n1 = total_photons(occ, first_port);
      int n2 = total_photons(occ, second_port);
      double first = povm.click[n1] * povm.no_click[n2];
      double second = povm.no_click[n1] * povm.click[n2];
      if (outcome == 0) return first;
      if (outcome == 1) return second;
      return 1.0 - first - second;
    };
  };

  // After tracing: [input modes without signal][a_m (a_o)]. Put the stage
  // output where the signal was and the orthogonal output last.
  std::vector<int> order;
  for (int k = 0; k < m; ++k) {
    if (k < signal_mode) order.push_back(k);
    else if (k == signal_mode) order.push_back(m - 1);
    else order.push_back(k - 1);
  }
  if (orthogonal) order.push_back(m);

  std::vector<StageBranch> branches;
  for (int outcome : {0, 1, -1}) {
    DensityOperator reduced = trace_out_weighted(joint, traced, weight_for(outcome));
    reduced = permute_modes(reduced, order);
    if (outcome >= 0 && params.phase_correction) {
      double phi = correction_phase(params.eta, params.convention, outcome == 0 ? 0 : 2);
      reduced = apply_phase(reduced, signal_mode, -phi);
      if (orthogonal) reduced = apply_phase(reduced, m, -phi);
    }
    branches.push_back(StageBranch{outcome, std::move(reduced)});
  }
  return branches;
}

std::vector<HeraldedOutcome> nla_stage(const DensityOperator &rho, const StageParams &params) {
  if (rho.num_modes() != 1) {
    throw std::invalid_argument("nla_stage: expected a single-mode input");
  }
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if ((*rho.basis)[i][0] > 1 && std::abs(rho.matrix(i, i)) > 1e-12) {
      throw std::invalid_argument("nla_stage: input must be supported on {|0>, |1>}");
    }
  }
  std::vector<HeraldedOutcome> out;
  for (auto &branch : run_stage(rho, 0, params)) {
    DensityOperator merged =
        branch.state.num_modes() == 2 ? merge_modes(branch.state, {{0, 1}}) : std::move(branch.state);
    double p = merged.trace();
    HeraldedOutcome o;
    o.pattern = HeraldPattern{branch.detector >= 0 ? branch.detector + 1 : 0, 0, branch.detector >= 0};
    o.probability = p;
    o.output = p > 0.0 ? normalized(merged) : merged;
    out.push_back(std::move(o));
  }
  return out;
}

FockState qubit_state(const QubitAmplitudes &qubit, int cutoff) {
  validate(qubit);
  FockState h = make_basis_state(2, cutoff, std::array<int, 2>{1, 0});
  FockState v = make_basis_state(2, cutoff, std::array<int, 2>{0, 1});
  return FockState{h.basis, qubit.alpha * h.amplitudes + qubit.beta * v.amplitudes};
}

DensityOperator build_input(const CircuitConfig &config) {
  validate(config);
  DensityOperator rho = to_density(qubit_state(config.qubit, config.cutoff));
  rho = loss_channel(rho, 0, config.gamma1);
  return loss_channel(rho, 1, config.gamma1);
}

AmplifierResult qubit_amplifier(const CircuitConfig &config, BeamsplitterConvention convention) {
  validate(config);
  const DensityOperator input = build_input(config);
  const DetectorModel detector = herald_detector(config);
  const StageParams v_stage{config.eta_v, config.tau, config.v1, detector, convention, true};
  const StageParams h_stage{config.eta_h, config.tau, config.v2, detector, convention, true};

  // Modes after both stages: [H_m, V_m, (V_o), (H_o)].
  std::vector<int> h_group{0}, v_group{1};
  int next = 2;
  if (config.v1 < 1.0) v_group.push_back(next++);
  if (config.v2 < 1.0) h_group.push_back(next++);
  const std::vector<std::vector<int>> groups{h_group, v_group};

  AmplifierResult result;
  DensityOperator fail;
  std::array<DensityOperator, 4> success;
  for (const auto &first : run_stage(input, 1, v_stage)) {
    for (auto &second : run_stage(first.state, 0, h_stage)) {
      DensityOperator merged = merge_modes(second.state, groups);
      if (first.detector >= 0 && second.detector >= 0) {
        success[first.detector * 2 + second.detector] = std::move(merged);
      } else if (fail.basis) {
        fail.matrix += merged.matrix;
      } else {
        fail = std::move(merged);
      }
    }
  }

  DensityOperator mixture{success[0].basis, Eigen::MatrixXcd::Zero(success[0].dim(), success[0].dim())};
  for (int k = 0; k < 4; ++k) {
    double p = success[k].trace();
    HeraldedOutcome o;
    o.pattern = HeraldPattern{1 + k / 2, 3 + k % 2, true};
    o.probability = p;
    o.output = p > 0.0 ? normalized(success[k]) : success[k];
    mixture.matrix += success[k].matrix;
    result.success_probability += p;
    result.outcomes.push_back(std::move(o));
  }
  HeraldedOutcome f;
  f.probability = fail.trace();
  f.output = f.probability > 0.0 ? normalized(fail) : fail;
  result.outcomes.push_back(std::move(f));
  result.output = result.success_probability > 0.0 ? normalized(mixture) : mixture;
  return result;
}

double bunching_weight(const DetectorModel &detector) {
  const double d = detector.efficiency;
  if (detector.efficiency_model == EfficiencyModel::kPerClick) {
    return detector.number_resolving ? 0.0 : 1.0;
  }
  return detector.number_resolving ? 2.0 * (1.0 - d) : 2.0 - d;
}

AnalyticOutput analytic_model(const CircuitConfig &config) {
  validate(config);
  if (config.tau <= 0.0) {
    throw std::invalid_argument("analytic_model: tau must be positive");
  }
  const double gamma0 = 1.0 - config.gamma1;
  const double gamma1 = config.gamma1;
  const double tau = config.tau;
  const double b = bunching_weight(herald_detector(config));
  const double pa = std::norm(config.qubit.alpha);
  const double pb = std::norm(config.qubit.beta);

  const double g2_h = g2_from_eta(config.eta_h);
  const double g2_v = g2_from_eta(config.eta_v);
  const double l_h = b + (1.0 - tau) / (tau * (1.0 - config.eta_h));
  const double l_v = b + (1.0 - tau) / (tau * (1.0 - config.eta_v));

  AnalyticOutput out;
  out.g2 = pa * g2_h + pb * g2_v;
  out.l = pa * l_h + pb * l_v;
  out.n = gamma0 + out.g2 * gamma1;
  const double denom = gamma0 + gamma1 * (out.g2 + out.l);
  out.vacuum_weight = (gamma0 + out.l * gamma1) / denom;
  out.qubit_weight = out.g2 * gamma1 / denom;
  out.g_nom = out.g2 / out.n;
  const double prefactor = config.delta * config.delta * tau * tau * (1.0 - config.eta_h) * (1.0 - config.eta_v);
  out.pattern_probability = prefactor / 4.0 * denom;
  out.success_probability = prefactor * denom;

  Eigen::Vector2cd phi(config.qubit.alpha * std::sqrt(g2_h), config.qubit.beta * std::sqrt(g2_v));
  out.qubit = phi * phi.adjoint() / phi.squaredNorm();
  return out;
}

double gain_nominal(double g2, double gamma1) {
  if (!(g2 >= 0.0) || !(gamma1 >= 0.0 && gamma1 <= 1.0)) {
    throw std::invalid_argument("gain_nominal: need g2 >= 0 and gamma1 in [0, 1]");
  }
  return g2 / ((1.0 - gamma1) + g2 * gamma1);
}

double gain_saturated(const CircuitConfig &config) {
  if (config.gamma1 <= 0.0) {
    throw std::invalid_argument("gain_saturated: gamma1 must be positive");
  }
  return analytic_model(config).qubit_weight / config.gamma1;
}

}  // namespace scissorsim
