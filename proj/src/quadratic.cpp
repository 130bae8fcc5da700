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

#include "fermiforge/quadratic.hpp"

#include <cmath>
#include <sstream>

namespace fermiforge {

ComplexMatrix QuadraticHamiltonian::effective_m() const {
  return m - mu * ComplexMatrix::Identity(m.rows(), m.cols());
}

bool QuadraticHamiltonian::conserves_particles(double tol) const {
  return delta.size() == 0 || delta.cwiseAbs().maxCoeff() <= tol;
}

void QuadraticHamiltonian::validate(const Tolerances& tol) const {
  if (m.rows() != m.cols()) {
    throw Error("QuadraticHamiltonian: M must be square");
  }
  if (delta.rows() != m.rows() || delta.cols() != m.cols()) {
    throw Error("QuadraticHamiltonian: Delta shape must match M");
  }
  if (!m.allFinite() || !delta.allFinite() || !std::isfinite(mu)) {
    throw Error("QuadraticHamiltonian: non-finite entries");
  }
  double herm = hermiticity_error(m);
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "QuadraticHamiltonian: M not Hermitian, residual " << herm;
    throw Error(os.str());
  }
  double asym = antisymmetry_error(delta);
  if (asym > tol.hermitian) {
    std::ostringstream os;
    os << "QuadraticHamiltonian: Delta not antisymmetric, residual " << asym;
    throw Error(os.str());
  }
}

QuadraticHamiltonian QuadraticHamiltonian::number_conserving(const ComplexMatrix& m, double mu) {
  QuadraticHamiltonian h;
  h.m = m;
  h.delta = ComplexMatrix::Zero(m.rows(), m.cols());
  h.mu = mu;
  return h;
}

ComplexMatrix GaussianDecomposition::w1() const {
  int n = n_modes();
  return w.bottomRightCorner(n, n);
}

ComplexMatrix GaussianDecomposition::w2() const {
  int n = n_modes();
  return w.bottomLeftCorner(n, n);
}

ComplexMatrix GaussianDecomposition::w_lower() const {
  int n = n_modes();
  return w.bottomRows(n);
}

ComplexMatrix bdg_matrix(const QuadraticHamiltonian& h) {
  int n = h.n_modes();
  ComplexMatrix mp = h.effective_m();
  ComplexMatrix k(2 * n, 2 * n);
  k.topLeftCorner(n, n) = h.delta;
  k.topRightCorner(n, n) = mp;
  k.bottomLeftCorner(n, n) = -mp.conjugate();
  k.bottomRightCorner(n, n) = -h.delta.conjugate();
  return k;
}

ComplexMatrix majorana_basis(int n_modes) {
  int n = n_modes;
  double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix omega = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; j++) {
    omega(j, j) = s;
    omega(j, j + n) = s;
    omega(j + n, j) = Complex(0, s);
    omega(j + n, j + n) = Complex(0, -s);
  }
  return omega;
}

RealMatrix majorana_matrix(const QuadraticHamiltonian& h) {
  ComplexMatrix omega = majorana_basis(h.n_modes());
  ComplexMatrix a = Complex(0, -1) * omega.conjugate() * bdg_matrix(h) * omega.adjoint();
  RealMatrix ar = a.real();
  return 0.5 * (ar - ar.transpose());
}

GaussianDecomposition diagonalize_quadratic(const QuadraticHamiltonian& h, const Tolerances& tol) {
  h.validate(tol);
  int n = h.n_modes();
  ComplexMatrix omega = majorana_basis(n);
  ComplexMatrix a = Complex(0, -1) * omega.conjugate() * bdg_matrix(h) * omega.adjoint();
  CanonicalForm cf = antisymmetric_canonical_form(a, tol);

  GaussianDecomposition out;
  out.w = omega.adjoint() * cf.r.cast<Complex>() * omega;
  out.orbital_energies = cf.eps;
  out.constant = 0.5 * (h.effective_m().trace().real() - cf.eps.sum());
  return out;
}

}  // namespace fermiforge
