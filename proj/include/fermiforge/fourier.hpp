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

#ifndef FERMIFORGE_FOURIER_HPP_
#define FERMIFORGE_FOURIER_HPP_

#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/lattice.hpp"
#include "fermiforge/linalg.hpp"

namespace fermiforge {

/// U_{xk} = exp(sign * 2 pi i x k / n) / sqrt(n).
ComplexMatrix dft_matrix(int n, int sign = 1);

/// One n_x x n_x unitary per row, in column coordinates (a single entry is
/// used for every row). Odd rows are mapped onto their reversed JWT order.
Circuit build_row_transform(const Lattice2D& lattice, const std::vector<ComplexMatrix>& per_row);

/// One n_y x n_y unitary per column, emitted as BARE_GIVENS between
/// column-adjacent sites. Correct only once dressed by the gamma circuit.
Circuit build_bare_column_transform(const Lattice2D& lattice, const std::vector<ComplexMatrix>& per_col);

struct FactorizedTransform {
  Circuit gamma;
  Circuit columns;
  Circuit rows;
  /// gamma, columns, gamma^+, rows in time order.
  Circuit circuit;
};

FactorizedTransform build_factorized_transform(const Lattice2D& lattice, const std::vector<ComplexMatrix>& fx,
                                               const std::vector<ComplexMatrix>& fy);

/// The N x N mode matrix (JWT order) the factorized circuit realizes:
/// c+_{(r,c)} -> sum fy[c](r, r') fx[r'](c, c') c+_{(r',c')}.
ComplexMatrix factorized_mode_matrix(const Lattice2D& lattice, const std::vector<ComplexMatrix>& fx,
                                     const std::vector<ComplexMatrix>& fy);

}  // namespace fermiforge

#endif  // FERMIFORGE_FOURIER_HPP_
