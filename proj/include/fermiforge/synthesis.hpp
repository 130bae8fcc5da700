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

#ifndef FERMIFORGE_SYNTHESIS_HPP_
#define FERMIFORGE_SYNTHESIS_HPP_

#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/linalg.hpp"
#include "fermiforge/quadratic.hpp"

namespace fermiforge {

struct SlaterSynthesis {
  Circuit circuit;
  /// Rotations in elimination order; the circuit applies them reversed.
  std::vector<GivensRotation> rotations;
  /// Diagonal left after elimination: V Q E1^+ ... Em^+ = diag(lambdas) [1 0].
  ComplexVector lambdas;
  /// Row-mixing unitary of the first step.
  ComplexMatrix v;
  /// Depth of the rotation network alone, without the initial X layer.
  int rotation_depth = 0;
};

/// Q is M x N with orthonormal rows. The circuit maps |0...0> to the Slater
/// determinant of Q; the global phase is set so the match is exact.
SlaterSynthesis synthesize_slater(const ComplexMatrix& q, const Tolerances& tol = kDefaultTolerances);
Circuit synth_slater(const ComplexMatrix& q, const Tolerances& tol = kDefaultTolerances);

struct BasisChange {
  int n_modes = 0;
  /// Elimination order: U = diag(phases) E_m ... E_1.
  std::vector<GivensRotation> rotations;
  ComplexVector phases;

  ComplexMatrix reconstruct() const;
  /// Circuit realizing the mode map c+_j -> sum_k U_jk c+_k. The phase layer
  /// is emitted only when `include_phases` is set.
  Circuit circuit(bool include_phases = true) const;
  /// Gates with mode i placed on qubit qubit_map[i] (identity when empty).
  /// `bare` emits BARE_GIVENS instead of GIVENS.
  std::vector<Gate> gates(const std::vector<int>& qubit_map = {}, bool include_phases = true,
                          bool bare = false) const;
};

BasisChange decompose_basis_change(const ComplexMatrix& u, const Tolerances& tol = kDefaultTolerances);

struct GaussianSynthesis {
  Circuit circuit;
  GaussianDecomposition decomposition;
  int n_givens = 0;
  int n_particle_hole = 0;
  bool used_slater_path = false;
};

GaussianSynthesis synthesize_gaussian(const QuadraticHamiltonian& h, const Tolerances& tol = kDefaultTolerances);
Circuit synth_gaussian(const QuadraticHamiltonian& h, const Tolerances& tol = kDefaultTolerances);

}  // namespace fermiforge

#endif  // FERMIFORGE_SYNTHESIS_HPP_
