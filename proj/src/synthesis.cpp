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

#include "fermiforge/synthesis.hpp"

#include <cmath>
#include <sstream>

namespace fermiforge {

SlaterSynthesis synthesize_slater(const ComplexMatrix& q, const Tolerances& tol) {
  const int m = static_cast<int>(q.rows());
  const int n = static_cast<int>(q.cols());
  if (!is_isometry_rows(q, tol.unitary)) {
    throw Error("synth_slater: Q must have orthonormal rows");
  }
  SlaterSynthesis out;
  ComplexMatrix work = q;
  out.v = ComplexMatrix::Identity(m, m);

  // Row step: clear the upper-right triangle with row rotations.
  for (int x = n - 1; x >= n - m + 1; x--) {
    for (int l = 0; l < x - (n - m); l++) {
      GivensParams p = givens_zero_pair(work(l + 1, x), work(l, x), tol.zero);
      if (p.noop) {
        work(l, x) = 0;
        continue;
      }
      GivensRotation g{l + 1, l, p.theta, p.phi};
      apply_givens_rows_inplace(work, g);
      apply_givens_rows_inplace(out.v, g);
      work(l, x) = 0;
    }
  }

  // Column step: push each row's weight onto its diagonal entry. Entry (i, c)
  // is cleared at step n - m + 2i - c so that each step acts on disjoint
  // column pairs.
  for (int t = 0; t + 1 < n; t++) {
    for (int i = 0; i < m; i++) {
      int c = n - m + 2 * i - t;
      if (c <= i || c > n - m + i) {
        continue;
      }
      Complex a = work(i, c - 1);
      Complex b = work(i, c);
      GivensParams p = givens_zero_pair(std::conj(a), std::conj(b), tol.zero);
      if (!p.noop) {
        GivensRotation g{c - 1, c, p.theta, p.phi};
        apply_givens_columns_inplace(work, g);
        out.rotations.push_back(g);
      }
      work(i, c) = 0;
    }
  }

  out.lambdas = work.diagonal().head(m);
  std::vector<Gate> gates;
  for (int i = 0; i < m; i++) {
    gates.push_back(Gate::x(i));
  }
  std::vector<Gate> rotation_gates;
  for (auto it = out.rotations.rbegin(); it != out.rotations.rend(); ++it) {
    rotation_gates.push_back(Gate::givens(it->j, it->k, it->theta, it->phi));
  }
  out.rotation_depth = schedule(rotation_gates, n).depth();
  gates.insert(gates.end(), rotation_gates.begin(), rotation_gates.end());
  Complex phase = out.lambdas.prod() / out.v.determinant();
  phase /= std::abs(phase);
  out.circuit = schedule(gates, n, 0, phase);
  return out;
}

Circuit synth_slater(const ComplexMatrix& q, const Tolerances& tol) { return synthesize_slater(q, tol).circuit; }

ComplexMatrix BasisChange::reconstruct() const {
  ComplexMatrix u = phases.asDiagonal();
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
    u = u * embedded_givens(*it, n_modes);
  }
  return u;
}

std::vector<Gate> BasisChange::gates(const std::vector<int>& qubit_map, bool include_phases, bool bare) const {
  auto qubit = [&](int mode) { return qubit_map.empty() ? mode : qubit_map[mode]; };
  std::vector<Gate> out;
  if (include_phases) {
    for (int j = 0; j < n_modes; j++) {
      double a = std::arg(phases(j));
      if (std::abs(a) > 1e-15) {
        out.push_back(Gate::phase(qubit(j), a));
      }
    }
  }
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
    GateKind kind = bare ? GateKind::BARE_GIVENS : GateKind::GIVENS;
    out.push_back(Gate{kind, qubit(it->j), qubit(it->k), it->theta, it->phi});
  }
  return out;
}

Circuit BasisChange::circuit(bool include_phases) const {
  return schedule(gates({}, include_phases), n_modes);
}

BasisChange decompose_basis_change(const ComplexMatrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols()) {
    throw Error("decompose_basis_change: matrix must be square");
  }
  double err = unitarity_error(u);
  if (err > tol.unitary) {
    std::ostringstream os;
    os << "decompose_basis_change: matrix not unitary, residual " << err;
    throw Error(os.str());
  }
  const int n = static_cast<int>(u.rows());
  BasisChange out;
  out.n_modes = n;
  ComplexMatrix work = u;
  for (int i = 0; i + 1 < n; i++) {
    for (int c = n - 1; c > i; c--) {
      GivensParams p = givens_zero_pair(std::conj(work(i, c - 1)), std::conj(work(i, c)), tol.zero);
      if (p.noop) {
        work(i, c) = 0;
        continue;
      }
      GivensRotation g{c - 1, c, p.theta, p.phi};
      apply_givens_columns_inplace(work, g);
      work(i, c) = 0;
      out.rotations.push_back(g);
    }
  }
  out.phases = work.diagonal();
  return out;
}

namespace {

GaussianSynthesis slater_path(const QuadraticHamiltonian& h, const GaussianDecomposition& dec,
                              const Tolerances& tol) {
  const int n = h.n_modes();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.effective_m());
  int m = 0;
  // Modes at exactly zero energy stay empty; either choice is a ground state.
  double cut = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  while (m < n && es.eigenvalues()(m) < -cut) {
    m++;
  }
  ComplexMatrix q = es.eigenvectors().leftCols(m).transpose();
  GaussianSynthesis out;
  out.decomposition = dec;
  out.used_slater_path = true;
  out.circuit = synth_slater(q, tol);
  for (const Gate& g : out.circuit.gates()) {
    if (g.kind == GateKind::GIVENS) {
      out.n_givens++;
    }
  }
  return out;
}

}  // namespace

GaussianSynthesis synthesize_gaussian(const QuadraticHamiltonian& h, const Tolerances& tol) {
  GaussianDecomposition dec = diagonalize_quadratic(h, tol);
  const int n = h.n_modes();
  if (h.conserves_particles(tol.zero)) {
    return slater_path(h, dec, tol);
  }

  ComplexMatrix work = dec.w_lower();
  // Clear the upper-left triangle of the left block by mixing rows.
  for (int k = 0; k + 1 < n; k++) {
    for (int l = 0; l + 1 < n - k; l++) {
      GivensParams p = givens_zero_pair(work(l + 1, k), work(l, k), tol.zero);
      if (!p.noop) {
        apply_givens_rows_inplace(work, GivensRotation{l + 1, l, p.theta, p.phi});
      }
      work(l, k) = 0;
    }
  }

  std::vector<Gate> elimination;
  for (int k = 0; k < 2 * n - 1; k++) {
    if (k % 2 == 0 && std::abs(work(k / 2, n - 1)) > tol.zero) {
      work.col(n - 1).swap(work.col(2 * n - 1));
      elimination.push_back(Gate::particle_hole_x(n - 1));
    }
    int end_row, end_col;
    if (k < n) {
      end_row = k;
      end_col = n - 1 - k;
    } else {
      end_row = n - 1;
      end_col = k - (n - 1);
    }
    int row = end_row;
    for (int j = end_col; j < n - 1; j += 2, row--) {
      Complex a = work(row, j);
      Complex b = work(row, j + 1);
      GivensParams p = givens_zero_pair(std::conj(b), std::conj(a), tol.zero);
      if (p.noop) {
        work(row, j) = 0;
        continue;
      }
      apply_givens_columns_inplace(work, GivensRotation{j + 1, j, p.theta, p.phi});
      apply_givens_columns_inplace(work, GivensRotation{n + j + 1, n + j, p.theta, -p.phi});
      work(row, j) = 0;
      elimination.push_back(Gate::givens(j + 1, j, p.theta, p.phi));
    }
  }

  GaussianSynthesis out;
  out.decomposition = dec;
  std::vector<Gate> gates(elimination.rbegin(), elimination.rend());
  for (const Gate& g : gates) {
    if (g.kind == GateKind::GIVENS) out.n_givens++;
    if (g.kind == GateKind::PARTICLE_HOLE_X) out.n_particle_hole++;
  }
  out.circuit = schedule(gates, n);
  return out;
}

Circuit synth_gaussian(const QuadraticHamiltonian& h, const Tolerances& tol) {
  return synthesize_gaussian(h, tol).circuit;
}

}  // namespace fermiforge
