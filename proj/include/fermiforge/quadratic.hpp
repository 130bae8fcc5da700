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

#ifndef FERMIFORGE_QUADRATIC_HPP_
#define FERMIFORGE_QUADRATIC_HPP_

#include "fermiforge/linalg.hpp"

namespace fermiforge {

/// H = sum (M - mu)_jk c+_j c_k + 1/2 sum (Delta_jk c+_j c+_k + h.c.)
struct QuadraticHamiltonian {
  ComplexMatrix m;
  ComplexMatrix delta;
  double mu = 0.0;

  int n_modes() const { return static_cast<int>(m.rows()); }
  /// M - mu * 1.
  ComplexMatrix effective_m() const;
  bool conserves_particles(double tol = 1e-12) const;
  void validate(const Tolerances& tol = kDefaultTolerances) const;

  static QuadraticHamiltonian number_conserving(const ComplexMatrix& m, double mu = 0.0);
};

/// (b+; b) = W (c+; c) with H = sum_j eps_j b+_j b_j + constant.
struct GaussianDecomposition {
  ComplexMatrix w;
  RealVector orbital_energies;
  double constant = 0.0;

  int n_modes() const { return static_cast<int>(orbital_energies.size()); }
  ComplexMatrix w1() const;
  ComplexMatrix w2() const;
  /// Lower half (W2 W1); row j holds the expansion of b_j.
  ComplexMatrix w_lower() const;
  double ground_energy() const { return constant; }
};

/// The 2N x 2N matrix [[Delta, M'], [-M'*, -Delta*]] of the symmetrized form.
ComplexMatrix bdg_matrix(const QuadraticHamiltonian& h);
/// Omega = (1/sqrt 2) [[1, 1], [i, -i]].
ComplexMatrix majorana_basis(int n_modes);
/// A = -i Omega* K Omega^dagger, real antisymmetric.
RealMatrix majorana_matrix(const QuadraticHamiltonian& h);

GaussianDecomposition diagonalize_quadratic(const QuadraticHamiltonian& h,
                                            const Tolerances& tol = kDefaultTolerances);

/// Random instances for tests and tools.
template <class Rng>
QuadraticHamiltonian random_quadratic(int n, bool with_pairing, Rng& rng);

}  // namespace fermiforge

#include <random>

namespace fermiforge {

template <class Rng>
QuadraticHamiltonian random_quadratic(int n, bool with_pairing, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(n, n);
  ComplexMatrix b(n, n);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      a(i, j) = Complex(normal(rng), normal(rng));
      b(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  QuadraticHamiltonian h;
  h.m = 0.5 * (a + a.adjoint());
  h.delta = with_pairing ? ComplexMatrix(0.5 * (b - b.transpose())) : ComplexMatrix::Zero(n, n);
  h.mu = 0.0;
  return h;
}

}  // namespace fermiforge

#endif  // FERMIFORGE_QUADRATIC_HPP_
