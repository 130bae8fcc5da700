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

#include "fermiforge/fourier.hpp"

#include <numbers>

#include "fermiforge/gamma.hpp"
#include "fermiforge/synthesis.hpp"

namespace fermiforge {

namespace {

const ComplexMatrix& pick(const std::vector<ComplexMatrix>& list, int i, int count, int dim, const char* what) {
  if (list.size() != 1 && static_cast<int>(list.size()) != count) {
    throw Error(std::string(what) + ": expected 1 or " + std::to_string(count) + " matrices, got " +
                std::to_string(list.size()));
  }
  const ComplexMatrix& m = list.size() == 1 ? list[0] : list[i];
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(std::string(what) + ": matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  return m;
}

}  // namespace

ComplexMatrix dft_matrix(int n, int sign) {
  ComplexMatrix u(n, n);
  for (int x = 0; x < n; x++) {
    for (int k = 0; k < n; k++) {
      double a = 2 * std::numbers::pi * sign * ((int64_t{x} * k) % n) / n;
      u(x, k) = std::polar(1.0 / std::sqrt(n), a);
    }
  }
  return u;
}

Circuit build_row_transform(const Lattice2D& lattice, const std::vector<ComplexMatrix>& per_row) {
  const int nx = lattice.n_x();
  std::vector<Gate> gates;
  for (int r = 0; r < lattice.n_y(); r++) {
    const ComplexMatrix& u = pick(per_row, r, lattice.n_y(), nx, "row transform");
    ComplexMatrix local(nx, nx);
    std::vector<int> qubits(nx);
    for (int c = 0; c < nx; c++) {
      int p = lattice.index(r, c) - r * nx;
      qubits[p] = lattice.index(r, c);
      for (int c2 = 0; c2 < nx; c2++) {
        local(p, lattice.index(r, c2) - r * nx) = u(c, c2);
      }
    }
    auto g = decompose_basis_change(local).gates(qubits);
    gates.insert(gates.end(), g.begin(), g.end());
  }
  return schedule(gates, lattice.n_sites());
}

Circuit build_bare_column_transform(const Lattice2D& lattice, const std::vector<ComplexMatrix>& per_col) {
  const int ny = lattice.n_y();
  std::vector<Gate> gates;
  for (int c = 0; c < lattice.n_x(); c++) {
    const ComplexMatrix& u = pick(per_col, c, lattice.n_x(), ny, "column transform");
    std::vector<int> qubits(ny);
    for (int r = 0; r < ny; r++) {
      qubits[r] = lattice.index(r, c);
    }
    auto g = decompose_basis_change(u).gates(qubits, true, true);
    gates.insert(gates.end(), g.begin(), g.end());
  }
  return schedule(gates, lattice.n_sites());
}

FactorizedTransform build_factorized_transform(const Lattice2D& lattice, const std::vector<ComplexMatrix>& fx,
                                               const std::vector<ComplexMatrix>& fy) {
  FactorizedTransform out;
  out.gamma = build_gamma(lattice, true);
  out.columns = build_bare_column_transform(lattice, fy);
  out.rows = build_row_transform(lattice, fx);
  out.circuit = concat(concat(concat(out.gamma, out.columns), inverse(out.gamma)), out.rows);
  return out;
}

ComplexMatrix factorized_mode_matrix(const Lattice2D& lattice, const std::vector<ComplexMatrix>& fx,
                                     const std::vector<ComplexMatrix>& fy) {
  const int n = lattice.n_sites();
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; j++) {
    Site a = lattice.site(j);
    const ComplexMatrix& y = pick(fy, a.col, lattice.n_x(), lattice.n_y(), "column transform");
    for (int k = 0; k < n; k++) {
      Site b = lattice.site(k);
      const ComplexMatrix& x = pick(fx, b.row, lattice.n_y(), lattice.n_x(), "row transform");
      u(j, k) = y(a.row, b.row) * x(a.col, b.col);
    }
  }
  return u;
}

}  // namespace fermiforge
