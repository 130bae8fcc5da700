// Copyright 2026 The fermiforge Authors
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

#include "fermiforge/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fermiforge {

namespace {

void check_dense(int n) {
  if (n < 0 || n > kMaxDenseModes) {
    std::ostringstream os;
    os << "dense Fock matrix requested for " << n << " modes (limit " << kMaxDenseModes << ")";
    throw Error(os.str());
  }
}

int n_from_dim(const Statevector& psi) {
  int n = std::countr_zero(static_cast<uint64_t>(psi.size()));
  if ((uint64_t{1} << n) != static_cast<uint64_t>(psi.size())) {
    throw Error("statevector length is not a power of two");
  }
  return n;
}

}  // namespace

FermionTerm creation(int mode, Complex coefficient) { return {{{mode, true}}, coefficient}; }
FermionTerm annihilation(int mode, Complex coefficient) { return {{{mode, false}}, coefficient}; }

FermionTerm hopping_term(int j, int k, Complex coefficient) {
  return {{{j, true}, {k, false}}, coefficient};
}

FermionTerm number_term(int j, Complex coefficient) { return hopping_term(j, j, coefficient); }

FermionTerm operator*(const FermionTerm& a, const FermionTerm& b) {
  FermionTerm t;
  t.factors = a.factors;
  t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
  t.coefficient = a.coefficient * b.coefficient;
  return t;
}

FermionTerm adjoint(const FermionTerm& t) {
  FermionTerm out;
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    out.factors.push_back({it->mode, !it->dagger});
  }
  out.coefficient = std::conj(t.coefficient);
  return out;
}

FermionOperator adjoint(const FermionOperator& op) {
  FermionOperator out;
  for (const auto& t : op) {
    out.push_back(adjoint(t));
  }
  return out;
}

int max_mode(const FermionOperator& op) {
  int m = -1;
  for (const auto& t : op) {
    for (const auto& f : t.factors) {
      m = std::max(m, f.mode);
    }
  }
  return m;
}

bool apply_term_to_basis(const FermionTerm& t, uint64_t s, uint64_t& out, double& sign) {
  sign = 1.0;
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    uint64_t bit = uint64_t{1} << it->mode;
    bool occupied = (s & bit) != 0;
    if (occupied == it->dagger) {
      return false;
    }
    if (std::popcount(s & (bit - 1)) & 1) {
      sign = -sign;
    }
    s ^= bit;
  }
  out = s;
  return true;
}

Statevector apply_term(const FermionTerm& t, const Statevector& psi) {
  Statevector out = Statevector::Zero(psi.size());
  for (Eigen::Index s = 0; s < psi.size(); s++) {
    if (psi(s) == Complex(0)) {
      continue;
    }
    uint64_t dst;
    double sign;
    if (apply_term_to_basis(t, static_cast<uint64_t>(s), dst, sign)) {
      out(dst) += t.coefficient * sign * psi(s);
    }
  }
  return out;
}

Statevector apply_operator(const FermionOperator& op, const Statevector& psi) {
  Statevector out = Statevector::Zero(psi.size());
  for (const auto& t : op) {
    out += apply_term(t, psi);
  }
  return out;
}

ComplexMatrix jw_matrix(const FermionTerm& t, int n) { return jw_matrix(FermionOperator{t}, n); }

ComplexMatrix jw_matrix(const FermionOperator& op, int n) {
  check_dense(n);
  if (max_mode(op) >= n) {
    throw Error("jw_matrix: mode index exceeds register size");
  }
  const uint64_t dim = uint64_t{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : op) {
    for (uint64_t s = 0; s < dim; s++) {
      uint64_t dst;
      double sign;
      if (apply_term_to_basis(t, s, dst, sign)) {
        m(dst, s) += t.coefficient * sign;
      }
    }
  }
  return m;
}

SparseMatrix jw_sparse(const FermionOperator& op, int n) {
  if (n > kMaxStateModes) {
    throw Error("jw_sparse: register too large");
  }
  if (max_mode(op) >= n) {
    throw Error("jw_sparse: mode index exceeds register size");
  }
  const uint64_t dim = uint64_t{1} << n;
  std::vector<Eigen::Triplet<Complex>> trips;
  for (const auto& t : op) {
    for (uint64_t s = 0; s < dim; s++) {
      uint64_t dst;
      double sign;
      if (apply_term_to_basis(t, s, dst, sign)) {
        trips.emplace_back(dst, s, t.coefficient * sign);
      }
    }
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune(Complex(0.0), 0.0);
  return m;
}

Statevector vacuum(int n) { return basis_state(n, 0); }

Statevector basis_state(int n, uint64_t bits) {
  if (n < 0 || n > kMaxStateModes) {
    throw Error("basis_state: register too large");
  }
  Statevector psi = Statevector::Zero(Eigen::Index{1} << n);
  psi(bits) = 1.0;
  return psi;
}

Statevector slater_state(const ComplexMatrix& q, double tol) {
  if (!is_isometry_rows(q, tol)) {
    throw Error("slater_state: Q does not have orthonormal rows");
  }
  const int m = static_cast<int>(q.rows());
  const int n = static_cast<int>(q.cols());
  Statevector psi = vacuum(n);
  for (int i = m - 1; i >= 0; i--) {
    Statevector next = Statevector::Zero(psi.size());
    for (int k = 0; k < n; k++) {
      if (std::abs(q(i, k)) == 0.0) {
        continue;
      }
      next += apply_term(creation(k, q(i, k)), psi);
    }
    psi = std::move(next);
  }
  return psi;
}

FermionOperator quadratic_operator(const QuadraticHamiltonian& h) {
  FermionOperator op;
  const int n = h.n_modes();
  ComplexMatrix mp = h.effective_m();
  for (int j = 0; j < n; j++) {
    for (int k = 0; k < n; k++) {
      if (mp(j, k) != Complex(0)) {
        op.push_back(hopping_term(j, k, mp(j, k)));
      }
      if (h.delta.size() && h.delta(j, k) != Complex(0)) {
        op.push_back({{{j, true}, {k, true}}, 0.5 * h.delta(j, k)});
        op.push_back({{{k, false}, {j, false}}, 0.5 * std::conj(h.delta(j, k))});
      }
    }
  }
  return op;
}

ComplexMatrix dense_hamiltonian(const QuadraticHamiltonian& h) {
  return dense_hamiltonian(quadratic_operator(h), h.n_modes());
}

ComplexMatrix dense_hamiltonian(const FermionOperator& op, int n) {
  ComplexMatrix m = jw_matrix(op, n);
  return 0.5 * (m + m.adjoint());
}

void fix_global_phase(Statevector& psi) {
  Eigen::Index best = 0;
  double best_abs = -1;
  for (Eigen::Index i = 0; i < psi.size(); i++) {
    // Earliest index wins among near-ties so the choice is stable.
    double a = std::abs(psi(i));
    if (a > best_abs + 1e-12) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0) {
    psi *= std::conj(psi(best)) / best_abs;
  }
}

GroundState gaussian_ground_state(const QuadraticHamiltonian& h, int preferred_parity) {
  const int n = h.n_modes();
  if (n > 12) {
    throw Error("gaussian_ground_state: limited to 12 modes");
  }
  ComplexMatrix hd = dense_hamiltonian(h);
  const uint64_t dim = uint64_t{1} << n;
  struct Sector {
    int parity;
    std::vector<uint64_t> states;
    RealVector evals;
    ComplexMatrix evecs;
  };
  std::vector<Sector> sectors;
  for (int parity : {+1, -1}) {
    Sector sec;
    sec.parity = parity;
    for (uint64_t s = 0; s < dim; s++) {
      int p = (std::popcount(s) & 1) ? -1 : 1;
      if (p == parity) {
        sec.states.push_back(s);
      }
    }
    if (sec.states.empty()) {
      continue;
    }
    const int d = static_cast<int>(sec.states.size());
    ComplexMatrix block(d, d);
    for (int a = 0; a < d; a++) {
      for (int b = 0; b < d; b++) {
        block(a, b) = hd(sec.states[a], sec.states[b]);
      }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(block);
    sec.evals = es.eigenvalues();
    sec.evecs = es.eigenvectors();
    sectors.push_back(std::move(sec));
  }

  auto embed = [&](const Sector& sec, int col) {
    Statevector psi = Statevector::Zero(dim);
    for (size_t a = 0; a < sec.states.size(); a++) {
      psi(sec.states[a]) = sec.evecs(a, col);
    }
    fix_global_phase(psi);
    return psi;
  };

  const double kGap = 1e-9;
  double e_min = sectors[0].evals(0);
  for (const auto& sec : sectors) {
    e_min = std::min(e_min, sec.evals(0));
  }
  GroundState out;
  out.energy = e_min;
  int n_ground = 0;
  for (const auto& sec : sectors) {
    for (int c = 0; c < sec.evals.size(); c++) {
      if (sec.evals(c) - e_min < kGap) {
        out.candidates.push_back(embed(sec, c));
        n_ground++;
      }
    }
  }
  out.degenerate = n_ground > 1;

  const Sector* pick = nullptr;
  for (const auto& sec : sectors) {
    if (sec.evals(0) - e_min >= kGap) {
      continue;
    }
    if (pick == nullptr || (preferred_parity != 0 && sec.parity == preferred_parity)) {
      pick = &sec;
    }
  }
  out.state = embed(*pick, 0);
  out.parity = pick->parity;
  return out;
}

ComplexMatrix single_particle_propagator(const ComplexMatrix& m, double tau) {
  if (hermiticity_error(m) > 1e-10) {
    throw Error("single_particle_propagator: M is not Hermitian");
  }
  return expm_hermitian(m.transpose(), tau);
}

FermionOperator majorana_operator(int index, int n_modes) {
  if (index < 0 || index >= 2 * n_modes) {
    throw Error("majorana_operator: index out of range");
  }
  const double s = 1.0 / std::sqrt(2.0);
  if (index < n_modes) {
    return {creation(index, s), annihilation(index, s)};
  }
  int j = index - n_modes;
  return {creation(j, Complex(0, s)), annihilation(j, Complex(0, -s))};
}

Complex expectation(const FermionOperator& op, const Statevector& psi) {
  return psi.dot(apply_operator(op, psi));
}

double number_expectation(const Statevector& psi) {
  double total = 0;
  for (Eigen::Index s = 0; s < psi.size(); s++) {
    total += std::norm(psi(s)) * std::popcount(static_cast<uint64_t>(s));
  }
  return total;
}

int parity_of(const Statevector& psi, double tol) {
  double even = 0;
  double odd = 0;
  for (Eigen::Index s = 0; s < psi.size(); s++) {
    (std::popcount(static_cast<uint64_t>(s)) & 1 ? odd : even) += std::norm(psi(s));
  }
  if (odd <= tol) return +1;
  if (even <= tol) return -1;
  return 0;
}

Statevector permute_modes(const Statevector& psi, const std::vector<int>& perm) {
  const int n = n_from_dim(psi);
  if (static_cast<int>(perm.size()) != n) {
    throw Error("permute_modes: permutation size mismatch");
  }
  std::vector<int> check(perm);
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; i++) {
    if (check[i] != i) {
      throw Error("permute_modes: not a permutation");
    }
  }
  Statevector out = Statevector::Zero(psi.size());
  std::vector<int> targets;
  for (Eigen::Index s = 0; s < psi.size(); s++) {
    if (psi(s) == Complex(0)) {
      continue;
    }
    targets.clear();
    uint64_t dst = 0;
    for (int i = 0; i < n; i++) {
      if ((s >> i) & 1) {
        targets.push_back(perm[i]);
        dst |= uint64_t{1} << perm[i];
      }
    }
    int inversions = 0;
    for (size_t a = 0; a < targets.size(); a++) {
      for (size_t b = a + 1; b < targets.size(); b++) {
        inversions += targets[a] > targets[b];
      }
    }
    out(dst) += (inversions & 1 ? -1.0 : 1.0) * psi(s);
  }
  return out;
}

}  // namespace fermiforge
