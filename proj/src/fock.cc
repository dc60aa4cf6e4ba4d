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

#include "scissorsim/fock.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace scissorsim {

namespace {

constexpr double kTol = 1e-12;

void enumerate(int mode, int num_modes, int remaining, Occupation &current, std::vector<Occupation> &out) {
  if (mode == num_modes) {
    out.push_back(current);
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    current[mode] = n;
    enumerate(mode + 1, num_modes, remaining - n, current, out);
  }
  current[mode] = 0;
}

std::string describe(std::span<const int> occupation) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < occupation.size(); ++i) {
    if (i) out << ',';
    out << occupation[i];
  }
  out << ']';
  return out.str();
}

void require_same_space(const BasisPtr &a, const BasisPtr &b, const char *what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": space mismatch (" << a->num_modes() << " modes/cutoff " << a->cutoff() << " vs "
        << b->num_modes() << " modes/cutoff " << b->cutoff() << ")";
    throw std::invalid_argument(msg.str());
  }
}

std::vector<bool> mode_mask(int num_modes, std::span<const int> modes, const char *what) {
  std::vector<bool> mask(num_modes, false);
  for (int m : modes) {
    if (m < 0 || m >= num_modes) {
      throw std::invalid_argument(std::string(what) + ": mode " + std::to_string(m) + " out of range");
    }
    if (mask[m]) {
      throw std::invalid_argument(std::string(what) + ": mode " + std::to_string(m) + " listed twice");
    }
    mask[m] = true;
  }
  return mask;
}

}  // namespace

FockBasis::FockBasis(int num_modes, int cutoff) : num_modes_(num_modes), cutoff_(cutoff) {
  if (num_modes < 0 || cutoff < 0) {
    throw std::invalid_argument("FockBasis: negative mode count or cutoff");
  }
  if (num_modes > 0 && std::log2(static_cast<double>(cutoff + 1)) * num_modes > 63.0) {
    throw std::invalid_argument("FockBasis: space too large");
  }
  Occupation current(num_modes, 0);
  enumerate(0, num_modes, cutoff, current, states_);
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(key(states_[i]), i);
  }
}

std::shared_ptr<const FockBasis> FockBasis::get(int num_modes, int cutoff) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FockBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[{num_modes, cutoff}];
  if (!slot) {
    slot = std::make_shared<const FockBasis>(num_modes, cutoff);
  }
  return slot;
}

std::uint64_t FockBasis::key(std::span<const int> occupation) const {
  std::uint64_t k = 0;
  for (int n : occupation) {
    k = k * static_cast<std::uint64_t>(cutoff_ + 1) + static_cast<std::uint64_t>(n);
  }
  return k;
}

std::optional<std::size_t> FockBasis::index_of(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != num_modes_) return std::nullopt;
  int total = 0;
  for (int n : occupation) {
    if (n < 0) return std::nullopt;
    total += n;
  }
  if (total > cutoff_) return std::nullopt;
  auto it = index_.find(key(occupation));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Complex FockState::amplitude(std::span<const int> occupation) const {
  auto idx = basis->index_of(occupation);
  return idx ? amplitudes[*idx] : Complex{};
}

Complex DensityOperator::element(std::span<const int> row, std::span<const int> col) const {
  auto i = basis->index_of(row);
  auto j = basis->index_of(col);
  return (i && j) ? matrix(*i, *j) : Complex{};
}

void validate(const QubitAmplitudes &q) {
  double n = std::norm(q.alpha) + std::norm(q.beta);
  if (std::abs(n - 1.0) > kTol) {
    throw std::invalid_argument("QubitAmplitudes: |alpha|^2 + |beta|^2 = " + std::to_string(n) + " != 1");
  }
}

FockState make_basis_state(int num_modes, int cutoff, std::span<const int> occupations) {
  if (static_cast<int>(occupations.size()) != num_modes) {
    throw std::invalid_argument("make_basis_state: expected " + std::to_string(num_modes) + " occupations, got " +
                                std::to_string(occupations.size()));
  }
  auto basis = FockBasis::get(num_modes, cutoff);
  auto idx = basis->index_of(occupations);
  if (!idx) {
    throw std::invalid_argument("make_basis_state: occupation " + describe(occupations) + " exceeds cutoff " +
                                std::to_string(cutoff));
  }
  FockState s{basis, Eigen::VectorXcd::Zero(basis->size())};
  s.amplitudes[*idx] = 1.0;
  return s;
}

FockState make_vacuum(int num_modes, int cutoff) {
  Occupation zeros(num_modes, 0);
  return make_basis_state(num_modes, cutoff, zeros);
}

FockState superpose(std::span<const std::pair<Complex, FockState>> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("superpose: no terms");
  }
  FockState out{terms.front().second.basis, Eigen::VectorXcd::Zero(terms.front().second.basis->size())};
  for (const auto &[c, s] : terms) {
    require_same_space(out.basis, s.basis, "superpose");
    out.amplitudes += c * s.amplitudes;
  }
  double n = out.amplitudes.norm();
  if (n < kTol) {
    throw std::invalid_argument("superpose: linear combination is the zero vector");
  }
  out.amplitudes /= n;
  return out;
}

namespace {

// Index into the product basis for each (i, j) pair, or -1 when the combined
// occupation exceeds the cap.
std::vector<std::ptrdiff_t> product_index(const FockBasis &a, const FockBasis &b, const FockBasis &out) {
  std::vector<std::ptrdiff_t> idx(a.size() * b.size(), -1);
  Occupation joined(a.num_modes() + b.num_modes());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::copy(a[i].begin(), a[i].end(), joined.begin());
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::copy(b[j].begin(), b[j].end(), joined.begin() + a.num_modes());
      if (auto k = out.index_of(joined)) idx[i * b.size() + j] = static_cast<std::ptrdiff_t>(*k);
    }
  }
  return idx;
}

}  // namespace

FockState tensor(const FockState &a, const FockState &b, std::optional<int> cutoff) {
  int cap = cutoff.value_or(a.cutoff() + b.cutoff());
  auto basis = FockBasis::get(a.num_modes() + b.num_modes(), cap);
  auto idx = product_index(*a.basis, *b.basis, *basis);
  FockState out{basis, Eigen::VectorXcd::Zero(basis->size())};
  for (std::size_t i = 0; i < a.basis->size(); ++i) {
    for (std::size_t j = 0; j < b.basis->size(); ++j) {
      Complex v = a.amplitudes[i] * b.amplitudes[j];
      auto k = idx[i * b.basis->size() + j];
      if (k < 0) {
        if (std::abs(v) > kTol) throw std::invalid_argument("tensor: component exceeds cutoff " + std::to_string(cap));
        continue;
      }
      out.amplitudes[k] = v;
    }
  }
  return out;
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b, std::optional<int> cutoff) {
  int cap = cutoff.value_or(a.cutoff() + b.cutoff());
  auto basis = FockBasis::get(a.num_modes() + b.num_modes(), cap);
  const std::size_t na = a.dim(), nb = b.dim();
  auto idx = product_index(*a.basis, *b.basis, *basis);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (idx[i * nb + j] < 0 && std::abs(a.matrix(i, i) * b.matrix(j, j)) > kTol) {
        throw std::invalid_argument("tensor: component exceeds cutoff " + std::to_string(cap));
      }
    }
  }
  DensityOperator out{basis, Eigen::MatrixXcd::Zero(basis->size(), basis->size())};
  for (std::size_t i1 = 0; i1 < na; ++i1) {
    for (std::size_t i2 = 0; i2 < na; ++i2) {
      Complex av = a.matrix(i1, i2);
      if (av == Complex{}) continue;
      for (std::size_t j1 = 0; j1 < nb; ++j1) {
        auto r = idx[i1 * nb + j1];
        if (r < 0) continue;
        for (std::size_t j2 = 0; j2 < nb; ++j2) {
          auto c = idx[i2 * nb + j2];
          if (c < 0) continue;
          out.matrix(r, c) = av * b.matrix(j1, j2);
        }
      }
    }
  }
  return out;
}

DensityOperator to_density(const FockState &psi) {
  return DensityOperator{psi.basis, psi.amplitudes * psi.amplitudes.adjoint()};
}

DensityOperator trace_out_weighted(const DensityOperator &rho, std::span<const int> traced,
                                   const std::function<double(std::span<const int>)> &weight) {
  const int m = rho.num_modes();
  auto mask = mode_mask(m, traced, "trace_out_weighted");
  std::vector<int> kept_modes;
  for (int i = 0; i < m; ++i) {
    if (!mask[i]) kept_modes.push_back(i);
  }
  auto reduced = FockBasis::get(static_cast<int>(kept_modes.size()), rho.cutoff());

  // Group basis states by the occupation of the traced modes; only pairs with
  // equal traced occupation contribute.
  std::map<Occupation, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  Occupation kept(kept_modes.size()), gone(traced.size());
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto &occ = (*rho.basis)[i];
    for (std::size_t k = 0; k < kept_modes.size(); ++k) kept[k] = occ[kept_modes[k]];
    for (std::size_t k = 0; k < traced.size(); ++k) gone[k] = occ[traced[k]];
    groups[gone].emplace_back(i, *reduced->index_of(kept));
  }

  DensityOperator out{reduced, Eigen::MatrixXcd::Zero(reduced->size(), reduced->size())};
  for (const auto &[occ, members] : groups) {
    double w = weight(occ);
    if (w == 0.0) continue;
    for (const auto &[i, ki] : members) {
      for (const auto &[j, kj] : members) {
        out.matrix(ki, kj) += w * rho.matrix(i, j);
      }
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const int> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: empty keep set");
  }
  auto mask = mode_mask(rho.num_modes(), keep, "partial_trace");
  std::vector<int> traced;
  for (int i = 0; i < rho.num_modes(); ++i) {
    if (!mask[i]) traced.push_back(i);
  }
  return trace_out_weighted(rho, traced, [](std::span<const int>) { return 1.0; });
}

DensityOperator permute_modes(const DensityOperator &rho, std::span<const int> order) {
  if (static_cast<int>(order.size()) != rho.num_modes()) {
    throw std::invalid_argument("permute_modes: order must list every mode once");
  }
  mode_mask(rho.num_modes(), order, "permute_modes");
  std::vector<std::size_t> map(rho.dim());
  Occupation moved(order.size());
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto &occ = (*rho.basis)[i];
    for (std::size_t k = 0; k < order.size(); ++k) moved[k] = occ[order[k]];
    map[i] = *rho.basis->index_of(moved);
  }
  DensityOperator out{rho.basis, Eigen::MatrixXcd::Zero(rho.dim(), rho.dim())};
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      out.matrix(map[i], map[j]) = rho.matrix(i, j);
    }
  }
  return out;
}

DensityOperator with_cutoff(const DensityOperator &rho, int cutoff) {
  auto basis = FockBasis::get(rho.num_modes(), cutoff);
  std::vector<std::ptrdiff_t> map(rho.dim(), -1);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (auto k = basis->index_of((*rho.basis)[i])) {
      map[i] = static_cast<std::ptrdiff_t>(*k);
    } else if (std::abs(rho.matrix(i, i)) > kTol) {
      throw std::invalid_argument("with_cutoff: population above cutoff " + std::to_string(cutoff));
    }
  }
  DensityOperator out{basis, Eigen::MatrixXcd::Zero(basis->size(), basis->size())};
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (map[i] < 0) continue;
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (map[j] < 0) continue;
      out.matrix(map[i], map[j]) = rho.matrix(i, j);
    }
  }
  return out;
}

DensityOperator merge_modes(const DensityOperator &rho, const std::vector<std::vector<int>> &groups) {
  const int m = rho.num_modes();
  std::vector<int> owner(m, -1);
  std::vector<int> internal;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw std::invalid_argument("merge_modes: empty group");
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      int mode = groups[g][k];
      if (mode < 0 || mode >= m || owner[mode] >= 0) {
        throw std::invalid_argument("merge_modes: modes must be partitioned into groups");
      }
      owner[mode] = static_cast<int>(g);
      if (k > 0) internal.push_back(mode);
    }
  }
  if (std::count(owner.begin(), owner.end(), -1) > 0) {
    throw std::invalid_argument("merge_modes: modes must be partitioned into groups");
  }
  auto merged = FockBasis::get(static_cast<int>(groups.size()), rho.cutoff());
  std::vector<std::size_t> target(rho.dim());
  std::vector<Occupation> internal_occ(rho.dim(), Occupation(internal.size()));
  Occupation out_occ(groups.size());
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto &occ = (*rho.basis)[i];
    std::fill(out_occ.begin(), out_occ.end(), 0);
    for (int mode = 0; mode < m; ++mode) out_occ[owner[mode]] += occ[mode];
    target[i] = *merged->index_of(out_occ);
    for (std::size_t k = 0; k < internal.size(); ++k) internal_occ[i][k] = occ[internal[k]];
  }
  DensityOperator out{merged, Eigen::MatrixXcd::Zero(merged->size(), merged->size())};
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (internal_occ[i] != internal_occ[j]) continue;
      out.matrix(target[i], target[j]) += rho.matrix(i, j);
    }
  }
  return out;
}

double fidelity(const DensityOperator &rho, const FockState &psi) {
  require_same_space(rho.basis, psi.basis, "fidelity");
  double f = (psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes)(0, 0).real();
  if (f < -kTol || f > 1.0 + kTol) {
    throw std::domain_error("fidelity: value " + std::to_string(f) + " outside [0, 1]; is rho normalized?");
  }
  return std::clamp(f, 0.0, 1.0);
}

DensityOperator normalized(const DensityOperator &rho) {
  double t = rho.trace();
  if (std::abs(t) < 1e-300) {
    throw std::domain_error("normalized: zero trace");
  }
  return DensityOperator{rho.basis, rho.matrix / t};
}

double purity(const DensityOperator &rho) {
  auto n = normalized(rho);
  return (n.matrix * n.matrix).trace().real();
}

double hermiticity_error(const DensityOperator &rho) {
  return (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityOperator &rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityOperator physicalize(const DensityOperator &rho, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -tol) {
    throw std::domain_error("physicalize: eigenvalue " + std::to_string(ev.minCoeff()) + " below tolerance");
  }
  double before = ev.sum();
  ev = ev.cwiseMax(0.0);
  double after = ev.sum();
  if (after > 0) ev *= before / after;
  Eigen::MatrixXcd m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return DensityOperator{rho.basis, m};
}

std::vector<double> sector_populations(const DensityOperator &rho) {
  std::vector<double> pops(rho.cutoff() + 1, 0.0);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto &occ = (*rho.basis)[i];
    pops[std::accumulate(occ.begin(), occ.end(), 0)] += rho.matrix(i, i).real();
  }
  return pops;
}

double vacuum_coherence(const DensityOperator &rho) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto &occ = (*rho.basis)[i];
    if (std::accumulate(occ.begin(), occ.end(), 0) == 1) {
      worst = std::max(worst, std::abs(rho.matrix(0, i)));
    }
  }
  return worst;
}

}  // namespace scissorsim
