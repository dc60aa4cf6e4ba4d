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

#include "scissorsim/tomography.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scissorsim {

namespace {

constexpr double kSqrtHalf = 1.0 / std::numbers::sqrt2;

Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd s;
  switch (k) {
    case 0:
      s << 0, 1, 1, 0;
      break;
    case 1:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
  }
  return s;
}

// Stokes operator of each analyzer basis as a Pauli index. For the (H, V)
// convention used here |R> = (H - iV)/sqrt2 is the -1 eigenstate of Y.
int stokes_axis(Basis b) { return b == Basis::kHV ? 2 : b == Basis::kDA ? 0 : 1; }
double stokes_sign(Basis b) { return b == Basis::kRL ? -1.0 : 1.0; }

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_count(const std::string &text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("counts line " + std::to_string(line) + ": bad count '" + text + "'");
  }
  return v;
}

}  // namespace

std::string to_string(Basis basis) {
  switch (basis) {
    case Basis::kHV:
      return "HV";
    case Basis::kDA:
      return "DA";
    case Basis::kRL:
      return "RL";
  }
  return "?";
}

std::string to_string(Polarization p) {
  static const char *names[] = {"H", "V", "D", "A", "R", "L"};
  return names[static_cast<int>(p)];
}

Basis parse_basis(std::string_view text) {
  for (Basis b : kAllBases) {
    if (to_string(b) == text) return b;
  }
  throw std::invalid_argument("unknown basis '" + std::string(text) + "'");
}

Polarization parse_polarization(std::string_view text) {
  for (Polarization p : kAllPolarizations) {
    if (to_string(p) == text) return p;
  }
  throw std::invalid_argument("unknown polarization '" + std::string(text) + "'");
}

QubitAmplitudes polarization_amplitudes(Polarization p) {
  const double s = kSqrtHalf;
  switch (p) {
    case Polarization::kH:
      return {1.0, 0.0};
    case Polarization::kV:
      return {0.0, 1.0};
    case Polarization::kD:
      return {s, s};
    case Polarization::kA:
      return {s, -s};
    case Polarization::kR:
      return {s, Complex(0, -s)};
    case Polarization::kL:
      return {s, Complex(0, s)};
  }
  return {};
}

PolarizationBasis polarization_basis(Basis basis) {
  static const Polarization plus[] = {Polarization::kH, Polarization::kD, Polarization::kR};
  static const Polarization minus[] = {Polarization::kV, Polarization::kA, Polarization::kL};
  int i = static_cast<int>(basis);
  auto p = polarization_amplitudes(plus[i]);
  auto m = polarization_amplitudes(minus[i]);
  return {basis, Eigen::Vector2cd(p.alpha, p.beta), Eigen::Vector2cd(m.alpha, m.beta)};
}

QubitState qubit_subspace(const DensityOperator &rho) {
  if (rho.num_modes() != 2) throw std::invalid_argument("qubit_subspace: expected a two-mode (H, V) state");
  const double tr = rho.trace();
  if (!(tr > 0.0)) throw std::invalid_argument("qubit_subspace: state has zero trace");
  const std::array<int, 2> vac{0, 0}, h{1, 0}, v{0, 1};
  QubitState q;
  q.matrix << rho.element(h, h), rho.element(h, v), rho.element(v, h), rho.element(v, v);
  q.vacuum_weight = rho.element(vac, vac).real() / tr;
  const double w = q.matrix.trace().real();
  if (w > 0.0) {
    q.matrix /= w;
  } else {
    q.matrix = Eigen::Matrix2cd::Identity() / 2.0;
  }
  return q;
}

AnalyzerProbabilities measurement_probs(const DensityOperator &rho_out, Basis basis) {
  if (rho_out.num_modes() != 2) throw std::invalid_argument("measurement_probs: expected a two-mode state");
  const double tr = rho_out.trace();
  if (!(tr > 0.0)) throw std::invalid_argument("measurement_probs: state has zero trace");
  auto pops = sector_populations(rho_out);
  double multi = 0.0;
  for (std::size_t n = 2; n < pops.size(); ++n) multi += pops[n];
  if (multi / tr > 1e-9) {
    throw std::invalid_argument("measurement_probs: state has multi-photon support");
  }
  const std::array<int, 2> vac{0, 0}, h{1, 0}, v{0, 1};
  Eigen::Matrix2cd block;
  block << rho_out.element(h, h), rho_out.element(h, v), rho_out.element(v, h), rho_out.element(v, v);
  block /= tr;
  auto pb = polarization_basis(basis);
  AnalyzerProbabilities out;
  out.d5 = std::max(0.0, (pb.plus.adjoint() * block * pb.plus)(0, 0).real());
  out.d6 = std::max(0.0, (pb.minus.adjoint() * block * pb.minus)(0, 0).real());
  out.none = rho_out.element(vac, vac).real() / tr;
  return out;
}

Eigen::MatrixXcd project_to_physical(const Eigen::MatrixXcd &matrix) {
  Eigen::MatrixXcd herm = (matrix + matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (!(total > 0.0)) throw std::invalid_argument("project_to_physical: no positive eigenvalue");
  ev /= total;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

QubitState reconstruct_qubit(std::span<const BasisCounts> counts, double detection_efficiency) {
  if (!(detection_efficiency > 0.0 && detection_efficiency <= 1.0)) {
    throw std::invalid_argument("reconstruct_qubit: detection efficiency must lie in (0, 1]");
  }
  std::array<BasisCounts, 3> pooled{};
  std::array<bool, 3> seen{};
  for (const auto &c : counts) {
    if (c.d5 < 0 || c.d6 < 0 || c.none < 0) throw std::invalid_argument("reconstruct_qubit: negative count");
    int i = static_cast<int>(c.basis);
    pooled[i].basis = c.basis;
    pooled[i].d5 += c.d5;
    pooled[i].d6 += c.d6;
    pooled[i].none += c.none;
    seen[i] = true;
  }
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Identity() / 2.0;
  double clicks = 0.0, total = 0.0;
  for (Basis b : kAllBases) {
    const auto &c = pooled[static_cast<int>(b)];
    if (!seen[static_cast<int>(b)]) throw std::invalid_argument("reconstruct_qubit: missing basis " + to_string(b));
    const double n = c.d5 + c.d6;
    if (!(n > 0.0)) throw std::invalid_argument("reconstruct_qubit: no clicks in basis " + to_string(b));
    const double s = stokes_sign(b) * (c.d5 - c.d6) / n;
    rho += 0.5 * s * pauli(stokes_axis(b));
    clicks += n;
    total += n + c.none;
  }
  QubitState q;
  q.matrix = project_to_physical(rho);
  q.vacuum_weight = std::clamp(1.0 - (clicks / total) / detection_efficiency, 0.0, 1.0);
  return q;
}

Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd &rho) {
  Eigen::Vector3d r;
  for (int k = 0; k < 3; ++k) r[k] = (rho * pauli(k)).trace().real();
  return r;
}

Eigen::Matrix2cd from_bloch_vector(const Eigen::Vector3d &r) {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Identity() / 2.0;
  for (int k = 0; k < 3; ++k) rho += 0.5 * r[k] * pauli(k);
  return rho;
}

double state_fidelity(const Eigen::Matrix2cd &rho, const Eigen::Matrix2cd &sigma) {
  // For qubits (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 = Tr(rho sigma) + 2 sqrt(det rho det sigma).
  const double overlap = (rho * sigma).trace().real();
  const double dets = std::max(0.0, rho.determinant().real()) * std::max(0.0, sigma.determinant().real());
  return std::clamp(overlap + 2.0 * std::sqrt(dets), 0.0, 1.0);
}

double state_fidelity(const Eigen::Matrix2cd &rho, const Eigen::Vector2cd &psi) {
  return std::clamp((psi.adjoint() * rho * psi)(0, 0).real() / psi.squaredNorm(), 0.0, 1.0);
}

double qubit_purity(const Eigen::Matrix2cd &rho) { return (rho * rho).trace().real(); }

CountsRecord &CountsRecord::operator+=(const CountsRecord &other) {
  c3 += other.c3;
  c4 += other.c4;
  for (const auto &[k, v] : other.by_detector) by_detector[k] += v;
  return *this;
}

double estimate_gamma1(double c4, double c3, double eps_det, double eps_path) {
  if (!(c3 > 0.0)) throw std::invalid_argument("estimate_gamma1: C3 must be positive");
  if (!(eps_det > 0.0 && eps_path > 0.0)) throw std::invalid_argument("estimate_gamma1: efficiencies must be positive");
  return c4 / c3 / (eps_det * eps_path);
}

double measured_gain(const CountsRecord &amp, const CountsRecord &noamp) {
  if (!(amp.c3 > 0.0) || !(noamp.c3 > 0.0) || !(noamp.c4 > 0.0)) {
    throw std::invalid_argument("measured_gain: C3 and reference C4 must be positive");
  }
  return (amp.c4 / amp.c3) / (noamp.c4 / noamp.c3);
}

double measured_gain_std_error(const CountsRecord &amp, const CountsRecord &noamp) {
  const double g = measured_gain(amp, noamp);
  if (!(amp.c4 > 0.0)) return std::numeric_limits<double>::infinity();
  return g * std::sqrt(1.0 / amp.c4 + 1.0 / amp.c3 + 1.0 / noamp.c4 + 1.0 / noamp.c3);
}

GainEstimate measured_gain(const std::map<std::string, std::pair<CountsRecord, CountsRecord>> &by_pattern) {
  if (by_pattern.empty()) throw std::invalid_argument("measured_gain: no herald patterns");
  GainEstimate out;
  CountsRecord amp, noamp;
  for (const auto &[label, rec] : by_pattern) {
    out.per_pattern[label] = measured_gain(rec.first, rec.second);
    amp += rec.first;
    noamp += rec.second;
  }
  out.value = measured_gain(amp, noamp);
  out.std_error = measured_gain_std_error(amp, noamp);
  double sum = 0.0;
  for (const auto &[_, g] : out.per_pattern) sum += g;
  out.pattern_mean = sum / out.per_pattern.size();
  double ss = 0.0;
  for (const auto &[_, g] : out.per_pattern) ss += (g - out.pattern_mean) * (g - out.pattern_mean);
  out.pattern_stddev = out.per_pattern.size() > 1 ? std::sqrt(ss / (out.per_pattern.size() - 1)) : 0.0;
  return out;
}

double success_probability_estimate(const CountsRecord &amp, const CountsRecord &noamp) {
  if (!(noamp.c3 > 0.0)) throw std::invalid_argument("success_probability_estimate: reference C3 must be positive");
  return amp.c3 / noamp.c3;
}

QubitState apply_unitary_correction(const QubitState &q, const Eigen::Matrix2cd &u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() > 1e-10) {
    throw std::invalid_argument("apply_unitary_correction: matrix is not unitary");
  }
  return {u * q.matrix * u.adjoint(), q.vacuum_weight};
}

Eigen::Matrix2cd fit_unitary_correction(std::span<const Eigen::Matrix2cd> measured,
                                        std::span<const Eigen::Matrix2cd> ideal) {
  if (measured.size() != ideal.size() || measured.empty()) {
    throw std::invalid_argument("fit_unitary_correction: need matching non-empty state lists");
  }
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t k = 0; k < measured.size(); ++k) {
    h += bloch_vector(measured[k]) * bloch_vector(ideal[k]).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
  Eigen::Matrix3d rot = svd.matrixV() * d * svd.matrixU().transpose();
  // R = rotation by theta about n  <->  U = cos(theta/2) I - i sin(theta/2) n.sigma
  Eigen::Quaterniond quat(rot);
  quat.normalize();
  Eigen::Matrix2cd u = quat.w() * Eigen::Matrix2cd::Identity();
  u -= Complex(0, 1) * (quat.x() * pauli(0) + quat.y() * pauli(1) + quat.z() * pauli(2));
  return u;
}

std::vector<CountsRow> read_counts_csv(std::istream &in) {
  std::vector<CountsRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 5) {
      throw std::invalid_argument("counts line " + std::to_string(lineno) + ": expected 5 fields");
    }
    if (header) {
      header = false;
      if (fields[0] == "basis") continue;
    }
    CountsRow row{fields[0], fields[1], fields[2], parse_count(fields[3], lineno), parse_count(fields[4], lineno)};
    if (row.c4 > row.c3) {
      throw std::invalid_argument("counts line " + std::to_string(lineno) + ": C4 exceeds C3");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_counts_csv(std::ostream &out, std::span<const CountsRow> rows) {
  out << "basis,detector,herald_pattern,C3,C4\n";
  auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto &r : rows) {
    out << r.basis << ',' << r.detector << ',' << r.herald_pattern << ',' << r.c3 << ',' << r.c4 << '\n';
  }
  out.precision(old);
}

std::vector<BasisCounts> basis_counts(std::span<const CountsRow> rows) {
  std::map<std::pair<std::string, std::string>, double> c3;
  std::array<BasisCounts, 3> acc{};
  std::array<bool, 3> seen{};
  for (const auto &r : rows) {
    Basis b = parse_basis(r.basis);
    int i = static_cast<int>(b);
    acc[i].basis = b;
    seen[i] = true;
    auto [it, fresh] = c3.emplace(std::make_pair(r.basis, r.herald_pattern), r.c3);
    if (!fresh && it->second != r.c3) {
      throw std::invalid_argument("counts: inconsistent C3 for basis " + r.basis + ", pattern " + r.herald_pattern);
    }
    if (r.detector == "D5") {
      acc[i].d5 += r.c4;
    } else if (r.detector == "D6") {
      acc[i].d6 += r.c4;
    } else {
      throw std::invalid_argument("counts: unknown analyzer detector '" + r.detector + "'");
    }
  }
  for (const auto &[key, v] : c3) acc[static_cast<int>(parse_basis(key.first))].none += v;
  std::vector<BasisCounts> out;
  for (int i = 0; i < 3; ++i) {
    if (!seen[i]) continue;
    acc[i].none -= acc[i].d5 + acc[i].d6;
    if (acc[i].none < -1e-9 * (acc[i].d5 + acc[i].d6)) {
      throw std::invalid_argument("counts: four-fold clicks exceed C3 in basis " + to_string(acc[i].basis));
    }
    acc[i].none = std::max(0.0, acc[i].none);
    out.push_back(acc[i]);
  }
  return out;
}

}  // namespace scissorsim
