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

#ifndef FERMIFORGE_FOCK_HPP_
#define FERMIFORGE_FOCK_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "fermiforge/linalg.hpp"
#include "fermiforge/quadratic.hpp"

namespace fermiforge {

/// Amplitudes indexed by basis-state integers; bit i is the occupation of mode i.
using Statevector = ComplexVector;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr int kMaxDenseModes = 14;
inline constexpr int kMaxStateModes = 26;

struct FermionFactor {
  int mode = 0;
  bool dagger = false;
  bool operator==(const FermionFactor&) const = default;
};

/// coefficient * factors[0] factors[1] ... (rightmost acts first).
struct FermionTerm {
  std::vector<FermionFactor> factors;
  Complex coefficient = 1.0;
};

using FermionOperator = std::vector<FermionTerm>;

FermionTerm creation(int mode, Complex coefficient = 1.0);
FermionTerm annihilation(int mode, Complex coefficient = 1.0);
/// coefficient * c+_j c_k
FermionTerm hopping_term(int j, int k, Complex coefficient);
/// coefficient * n_j
FermionTerm number_term(int j, Complex coefficient);
FermionTerm operator*(const FermionTerm& a, const FermionTerm& b);
FermionOperator adjoint(const FermionOperator& op);
FermionTerm adjoint(const FermionTerm& t);

int max_mode(const FermionOperator& op);

/// Applies a term to basis state `s`. Returns false when the result vanishes.
bool apply_term_to_basis(const FermionTerm& t, uint64_t s, uint64_t& out, double& sign);

Statevector apply_term(const FermionTerm& t, const Statevector& psi);
Statevector apply_operator(const FermionOperator& op, const Statevector& psi);

ComplexMatrix jw_matrix(const FermionTerm& t, int n);
ComplexMatrix jw_matrix(const FermionOperator& op, int n);
SparseMatrix jw_sparse(const FermionOperator& op, int n);

Statevector vacuum(int n);
Statevector basis_state(int n, uint64_t bits);

/// b+_1 ... b+_M |vac> with b+_i = sum_k Q_ik c+_k.
Statevector slater_state(const ComplexMatrix& q, double tol = 1e-10);

/// The normally ordered operator sum (M - mu)_jk c+_j c_k + 1/2 sum (Delta_jk c+_j c+_k + h.c.).
FermionOperator quadratic_operator(const QuadraticHamiltonian& h);
ComplexMatrix dense_hamiltonian(const QuadraticHamiltonian& h);
ComplexMatrix dense_hamiltonian(const FermionOperator& op, int n);

struct GroundState {
  Statevector state;
  double energy = 0.0;
  /// Gap to the next level below 1e-9.
  bool degenerate = false;
  /// +1 even, -1 odd, 0 when the state mixes parities.
  int parity = 0;
  std::vector<Statevector> candidates;
};

/// Lowest eigenvector of the dense Hamiltonian, solved per parity sector.
/// `preferred_parity` (+1/-1) picks the sector when both are degenerate.
GroundState gaussian_ground_state(const QuadraticHamiltonian& h, int preferred_parity = 0);

/// Makes the largest-magnitude amplitude real and positive.
void fix_global_phase(Statevector& psi);

/// exp(-i tau M^T).
ComplexMatrix single_particle_propagator(const ComplexMatrix& m, double tau);

/// f_j = (c+_j + c_j)/sqrt2, f_{j+N} = i(c+_j - c_j)/sqrt2.
FermionOperator majorana_operator(int index, int n_modes);

Complex expectation(const FermionOperator& op, const Statevector& psi);
double number_expectation(const Statevector& psi);
/// +1 or -1 when psi has definite parity within tol, else 0.
int parity_of(const Statevector& psi, double tol = 1e-10);

/// Relabels mode i as perm[i], keeping antisymmetry: each basis state
/// c+_{a1}..c+_{ak}|vac> becomes c+_{perm[a1]}..c+_{perm[ak]}|vac> reordered.
Statevector permute_modes(const Statevector& psi, const std::vector<int>& perm);

}  // namespace fermiforge

#endif  // FERMIFORGE_FOCK_HPP_
