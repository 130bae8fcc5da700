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

#include "fermiforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fermiforge {

namespace {

void check_pair(const GivensRotation& g, int limit, const char* what) {
  if (g.j < 0 || g.k < 0 || g.j >= limit || g.k >= limit) {
    std::ostringstream os;
    os << what << ": mode pair (" << g.j << ", " << g.k << ") out of range for size " << limit;
    throw Error(os.str());
  }
  if (g.j == g.k) {
    throw Error(std::string(what) + ": rotation needs two distinct modes");
  }
}

}  // namespace

Eigen::Matrix2cd givens_matrix(double theta, double phi) {
  double c = std::cos(theta);
  double s = std::sin(theta);
  Complex e = std::polar(1.0, phi);
  Eigen::Matrix2cd g;
  g << c, -e * s, s, e * c;
  return g;
}

Eigen::Matrix2cd GivensRotation::matrix() const { return givens_matrix(theta, phi); }

GivensParams givens_zero_pair(Complex a, Complex b, double zero_tol) {
  GivensParams p;
  if (std::abs(b) <= zero_tol) {
    p.noop = true;
    return p;
  }
  double arg_a = std::abs(a) > 0 ? std::arg(a) : 0.0;
  double arg_b = std::arg(b);
  p.theta = std::atan2(std::abs(b), std::abs(a));
  p.phi = std::remainder(std::numbers::pi + arg_a - arg_b, 2 * std::numbers::pi);
  return p;
}

void apply_givens_columns_inplace(ComplexMatrix& mat, const GivensRotation& g) {
  check_pair(g, static_cast<int>(mat.cols()), "apply_givens_columns");
  Eigen::Matrix2cd m = g.matrix();
  ComplexVector cj = mat.col(g.j);
  ComplexVector ck = mat.col(g.k);
  mat.col(g.j) = cj * std::conj(m(0, 0)) + ck * std::conj(m(0, 1));
  mat.col(g.k) = cj * std::conj(m(1, 0)) + ck * std::conj(m(1, 1));
}

void apply_givens_rows_inplace(ComplexMatrix& mat, const GivensRotation& g) {
  check_pair(g, static_cast<int>(mat.rows()), "apply_givens_rows");
  Eigen::Matrix2cd m = g.matrix();
  Eigen::RowVectorXcd rj = mat.row(g.j);
  Eigen::RowVectorXcd rk = mat.row(g.k);
  mat.row(g.j) = m(0, 0) * rj + m(0, 1) * rk;
  mat.row(g.k) = m(1, 0) * rj + m(1, 1) * rk;
}

ComplexMatrix apply_givens_columns(const ComplexMatrix& mat, const GivensRotation& g) {
  ComplexMatrix out = mat;
  apply_givens_columns_inplace(out, g);
  return out;
}

ComplexMatrix apply_givens_rows(const ComplexMatrix& mat, const GivensRotation& g) {
  ComplexMatrix out = mat;
  apply_givens_rows_inplace(out, g);
  return out;
}

ComplexMatrix embedded_givens(const GivensRotation& g, int n_modes) {
  check_pair(g, n_modes, "embedded_givens");
  ComplexMatrix e = ComplexMatrix::Identity(n_modes, n_modes);
  Eigen::Matrix2cd m = g.matrix();
  e(g.j, g.j) = m(0, 0);
  e(g.j, g.k) = m(0, 1);
  e(g.k, g.j) = m(1, 0);
  e(g.k, g.k) = m(1, 1);
  return e;
}

ComplexMatrix embedded_givens_bogoliubov(const GivensRotation& g, int n_modes) {
  ComplexMatrix e = ComplexMatrix::Zero(2 * n_modes, 2 * n_modes);
  ComplexMatrix upper = embedded_givens(g, n_modes);
  e.topLeftCorner(n_modes, n_modes) = upper;
  e.bottomRightCorner(n_modes, n_modes) = upper.conjugate();
  return e;
}

RealMatrix canonical_block(const RealVector& eps) {
  int n = static_cast<int>(eps.size());
  RealMatrix b = RealMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; j++) {
    b(j, j + n) = eps(j);
    b(j + n, j) = -eps(j);
  }
  return b;
}

CanonicalForm antisymmetric_canonical_form(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw Error("antisymmetric_canonical_form: expected an even square matrix");
  }
  double asym = antisymmetry_error(a);
  if (asym > tol.antisymmetric) {
    std::ostringstream os;
    os << "antisymmetric_canonical_form: input not antisymmetric, residual " << asym;
    throw Error(os.str());
  }
  double imag = a.imag().cwiseAbs().maxCoeff();
  if (imag > tol.imaginary) {
    std::ostringstream os;
    os << "antisymmetric_canonical_form: input not real, max imaginary part " << imag;
    throw Error(os.str());
  }
  const int two_n = static_cast<int>(a.rows());
  const int n = two_n / 2;
  CanonicalForm out;
  out.r = RealMatrix::Zero(two_n, two_n);
  out.eps = RealVector::Zero(n);
  if (n == 0) {
    return out;
  }

  RealMatrix ar = a.real();
  ar = 0.5 * (ar - ar.transpose());
  ComplexMatrix ia = Complex(0, 1) * ar.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ia);
  const RealVector& lam = es.eigenvalues();
  const ComplexMatrix& vecs = es.eigenvectors();

  double zero_cut = 1e-9 * std::max(1.0, ar.norm());
  int n_zero = 0;
  for (int j = 0; j < n; j++) {
    if (lam(n + j) <= zero_cut) {
      n_zero++;
    }
  }

  for (int j = n_zero; j < n; j++) {
    ComplexVector v = vecs.col(n + j);
    out.r.row(j) = std::sqrt(2.0) * v.imag().transpose();
    out.r.row(j + n) = std::sqrt(2.0) * v.real().transpose();
    out.eps(j) = lam(n + j);
  }

  if (n_zero > 0) {
    RealMatrix span(two_n, 4 * n_zero);
    for (int t = 0; t < 2 * n_zero; t++) {
      ComplexVector v = vecs.col(n - n_zero + t);
      span.col(2 * t) = v.real();
      span.col(2 * t + 1) = v.imag();
    }
    Eigen::JacobiSVD<RealMatrix> svd(span, Eigen::ComputeThinU);
    RealMatrix basis = svd.matrixU();
    for (int j = 0; j < n_zero; j++) {
      out.r.row(j) = basis.col(2 * j).transpose();
      out.r.row(j + n) = basis.col(2 * j + 1).transpose();
      double e = out.r.row(j) * ar * out.r.row(j + n).transpose();
      if (e < 0) {
        out.r.row(j + n) *= -1;
      }
      out.eps(j) = std::abs(e);
    }
  }
  return out;
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (m - m.adjoint()).norm();
}

double antisymmetry_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (m + m.transpose()).norm();
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_error(u) <= tol; }

bool is_isometry_rows(const ComplexMatrix& q, double tol) {
  if (q.rows() > q.cols()) {
    return false;
  }
  return (q * q.adjoint() - ComplexMatrix::Identity(q.rows(), q.rows())).norm() <= tol;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double tau) {
  ComplexMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
  ComplexVector phases(hs.rows());
  for (int i = 0; i < hs.rows(); i++) {
    phases(i) = std::polar(1.0, -tau * es.eigenvalues()(i));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace fermiforge
