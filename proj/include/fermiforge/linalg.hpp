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

#ifndef FERMIFORGE_LINALG_HPP_
#define FERMIFORGE_LINALG_HPP_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fermiforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Thrown for precondition violations anywhere in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Default numerical thresholds. Every routine that compares against one
/// of these also accepts an override.
struct Tolerances {
  double zero = 1e-12;
  double unitary = 1e-10;
  double antisymmetric = 1e-10;
  double hermitian = 1e-12;
  double imaginary = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Rotation parameters of G(theta, phi) =
///   [[cos t, -e^{i phi} sin t], [sin t, e^{i phi} cos t]].
struct GivensParams {
  double theta = 0.0;
  double phi = 0.0;
  bool noop = false;
};

/// A two-mode rotation acting on modes (j, k) with matrix G(theta, phi).
struct GivensRotation {
  int j = 0;
  int k = 1;
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Matrix2cd matrix() const;
};

Eigen::Matrix2cd givens_matrix(double theta, double phi);

/// Returns (theta, phi) with theta in [0, pi/2] such that
/// G(theta, phi) * (a, b)^T = (r, 0)^T. Inputs with |b| below `zero_tol`
/// yield the flagged identity rotation.
GivensParams givens_zero_pair(Complex a, Complex b, double zero_tol = 1e-12);

/// mat * G^dagger, with G embedded on columns (g.j, g.k).
ComplexMatrix apply_givens_columns(const ComplexMatrix& mat, const GivensRotation& g);
/// G * mat, with G embedded on rows (g.j, g.k).
ComplexMatrix apply_givens_rows(const ComplexMatrix& mat, const GivensRotation& g);

void apply_givens_columns_inplace(ComplexMatrix& mat, const GivensRotation& g);
void apply_givens_rows_inplace(ComplexMatrix& mat, const GivensRotation& g);

/// The 2N x 2N single-particle matrix diag(G, G*) of a rotation on modes (j, k).
ComplexMatrix embedded_givens_bogoliubov(const GivensRotation& g, int n_modes);
/// The N x N single-particle matrix of a rotation on modes (j, k).
ComplexMatrix embedded_givens(const GivensRotation& g, int n_modes);

struct CanonicalForm {
  RealMatrix r;
  RealVector eps;
};

/// R A R^T = [[0, E], [-E, 0]] with E = diag(eps), eps ascending and >= 0.
CanonicalForm antisymmetric_canonical_form(const ComplexMatrix& a,
                                           const Tolerances& tol = kDefaultTolerances);

/// The block matrix [[0, E], [-E, 0]].
RealMatrix canonical_block(const RealVector& eps);

double unitarity_error(const ComplexMatrix& u);
double hermiticity_error(const ComplexMatrix& m);
double antisymmetry_error(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);
bool is_isometry_rows(const ComplexMatrix& q, double tol = 1e-10);

/// exp(-i tau H) for Hermitian H via eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double tau);

/// Random Haar unitary and row isometry, for tests and tools.
template <class Rng>
ComplexMatrix random_unitary(int n, Rng& rng);
template <class Rng>
ComplexMatrix random_isometry(int m, int n, Rng& rng);

}  // namespace fermiforge

#include "fermiforge/linalg_random.inl"

#endif  // FERMIFORGE_LINALG_HPP_
