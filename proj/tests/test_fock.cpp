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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fermiforge/fock.hpp"
#include "fermiforge/simulator.hpp"
#include "test_support.hpp"

using namespace fermiforge;
namespace ts = testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix jx() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1.0 / std::sqrt(2.0);
  return m;
}

FermionOperator hopping_operator(const ComplexMatrix& m) {
  FermionOperator op;
  for (int j = 0; j < m.rows(); j++)
    for (int k = 0; k < m.cols(); k++)
      if (m(j, k) != Complex(0)) op.push_back(hopping_term(j, k, m(j, k)));
  return op;
}

}  // namespace

TEST(JwMatrix, CreationOnVacuum) {
  Statevector out = apply_term(creation(0), vacuum(2));
  EXPECT_EQ(out, basis_state(2, 1));
  Statevector out1 = apply_term(creation(1), vacuum(2));
  EXPECT_EQ(out1, basis_state(2, 2));
}

TEST(JwMatrix, MatchesKroneckerOracle) {
  for (int n = 1; n <= 5; n++)
    for (int j = 0; j < n; j++) {
      EXPECT_LT((jw_matrix(annihilation(j), n) - ts::lower(j, n)).norm(), 1e-15);
      EXPECT_LT((jw_matrix(creation(j), n) - ts::raise(j, n)).norm(), 1e-15);
    }
}

TEST(JwMatrix, HoppingWithIntermediateString) {
  // c+_0 c_2 = sigma+_0 Z_1 sigma-_2 and c+_1 c_2 has no string.
  ts::Mat sp = 0.5 * (ts::pauli('X') - Complex(0, 1) * ts::pauli('Y'));
  ts::Mat sm = 0.5 * (ts::pauli('X') + Complex(0, 1) * ts::pauli('Y'));
  ts::Mat expect02 = ts::on_qubits({sp, ts::pauli('Z'), sm});
  ts::Mat expect12 = ts::on_qubits({ts::pauli('I'), sp, sm});
  EXPECT_LT((jw_matrix(hopping_term(0, 2, 1.0), 3) - expect02).norm(), 1e-15);
  EXPECT_LT((jw_matrix(hopping_term(1, 2, 1.0), 3) - expect12).norm(), 1e-15);
}

TEST(JwMatrix, AnticommutationRelations) {
  for (int n = 1; n <= 8; n++) {
    std::vector<ComplexMatrix> c(n), cd(n);
    for (int j = 0; j < n; j++) {
      c[j] = jw_matrix(annihilation(j), n);
      cd[j] = jw_matrix(creation(j), n);
    }
    const int dim = 1 << n;
    for (int j = 0; j < n; j++)
      for (int k = 0; k < n; k++) {
        ComplexMatrix a = c[j] * cd[k] + cd[k] * c[j];
        ComplexMatrix expect = (j == k ? 1.0 : 0.0) * ComplexMatrix::Identity(dim, dim);
        ASSERT_LT((a - expect).norm(), 1e-12);
        ASSERT_LT((c[j] * c[k] + c[k] * c[j]).norm(), 1e-12);
      }
  }
}

TEST(JwMatrix, RandomAnticommutatorPairs) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; trial++) {
    int n = 1 + rng() % 8;
    int j = rng() % n, k = rng() % n;
    ComplexMatrix cj = jw_matrix(annihilation(j), n);
    ComplexMatrix ck = jw_matrix(annihilation(k), n);
    EXPECT_LT((cj * ck + ck * cj).norm(), 1e-12);
  }
}

TEST(JwMatrix, NumberOperator) {
  for (int n = 1; n <= 4; n++)
    for (int j = 0; j < n; j++) {
      ts::Mat expect = 0.5 * (ts::Mat::Identity(1 << n, 1 << n) - ts::embed_one(ts::pauli('Z'), j, n));
      EXPECT_LT((jw_matrix(number_term(j, 1.0), n) - expect).norm(), 1e-15);
    }
}

TEST(JwMatrix, AdjacentHoppingIdentities) {
  for (int n = 2; n <= 5; n++)
    for (int j = 0; j + 1 < n; j++) {
      ComplexMatrix h = jw_matrix(FermionOperator{hopping_term(j, j + 1, 1.0), hopping_term(j + 1, j, 1.0)}, n);
      ComplexMatrix a = jw_matrix(FermionOperator{hopping_term(j, j + 1, Complex(0, -1)),
                                                  hopping_term(j + 1, j, Complex(0, 1))},
                                  n);
      std::vector<ts::Mat> xx(n, ts::pauli('I')), yy(n, ts::pauli('I')), xy(n, ts::pauli('I')),
          yx(n, ts::pauli('I'));
      xx[j] = xx[j + 1] = ts::pauli('X');
      yy[j] = yy[j + 1] = ts::pauli('Y');
      xy[j] = ts::pauli('X');
      xy[j + 1] = ts::pauli('Y');
      yx[j] = ts::pauli('Y');
      yx[j + 1] = ts::pauli('X');
      EXPECT_LT((h - 0.5 * (ts::on_qubits(xx) + ts::on_qubits(yy))).norm(), 1e-14);
      EXPECT_LT((a - 0.5 * (ts::on_qubits(xy) - ts::on_qubits(yx))).norm(), 1e-14);
    }
}

TEST(JwMatrix, DenseCapEnforced) {
  EXPECT_THROW(jw_matrix(creation(0), kMaxDenseModes + 1), Error);
  EXPECT_THROW(jw_matrix(creation(5), 3), Error);
}

TEST(Majorana, AnticommuteToDelta) {
  const int n = 3;
  std::vector<ComplexMatrix> f;
  for (int j = 0; j < 2 * n; j++) f.push_back(jw_matrix(majorana_operator(j, n), n));
  for (int j = 0; j < 2 * n; j++)
    for (int k = 0; k < 2 * n; k++) {
      ComplexMatrix a = f[j] * f[k] + f[k] * f[j];
      EXPECT_LT((a - (j == k ? 1.0 : 0.0) * ComplexMatrix::Identity(8, 8)).norm(), 1e-14);
    }
}

TEST(SlaterState, IdentityRowsGiveBasisState) {
  ComplexMatrix q = ComplexMatrix::Identity(5, 5).topRows(3);
  Statevector psi = slater_state(q);
  EXPECT_EQ(psi, basis_state(5, 0b00111));
}

TEST(SlaterState, SingleParticleSuperposition) {
  ComplexMatrix q(1, 2);
  q << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  Statevector psi = slater_state(q);
  EXPECT_NEAR(psi(1).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(psi(2).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(psi(0)) + std::abs(psi(3)), 0.0, 1e-15);
}

TEST(SlaterState, KroneckerOracleAgreement) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 6; n++)
    for (int m = 0; m <= n; m++) {
      ComplexMatrix q = random_isometry(m, n, rng);
      ts::Vec vac = ts::Vec::Zero(1 << n);
      vac(0) = 1;
      ts::Vec expect = vac;
      for (int i = m - 1; i >= 0; i--) {
        ts::Mat b = ts::Mat::Zero(1 << n, 1 << n);
        for (int k = 0; k < n; k++) b += q(i, k) * ts::raise(k, n);
        expect = b * expect;
      }
      EXPECT_LT((slater_state(q) - expect).norm(), 1e-13);
    }
}

TEST(SlaterState, RowMixingGivesDeterminantPhase) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; trial++) {
    int n = 3 + trial % 5, m = 1 + trial % n;
    ComplexMatrix q = random_isometry(m, n, rng);
    ComplexMatrix v = random_unitary(m, rng);
    Statevector a = slater_state(q);
    Statevector b = slater_state(v * q);
    EXPECT_LT((b - v.determinant() * a).norm(), 1e-12);
  }
}

TEST(SlaterState, RejectsNonIsometry) {
  ComplexMatrix q = ComplexMatrix::Ones(2, 3);
  EXPECT_THROW(slater_state(q), Error);
}

TEST(DenseHamiltonian, TwoSiteHoppingSpectrum) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = -1;
  ComplexMatrix h = dense_hamiltonian(QuadraticHamiltonian::number_conserving(m));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  EXPECT_NEAR(es.eigenvalues()(0), -1, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(2), 0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(3), 1, 1e-12);
}

TEST(DenseHamiltonian, HermitianAndNumberConserving) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 6; n++) {
    QuadraticHamiltonian h = random_quadratic(n, false, rng);
    ComplexMatrix hd = dense_hamiltonian(h);
    EXPECT_LT(hermiticity_error(jw_matrix(quadratic_operator(h), n)), 1e-10);
    ComplexMatrix num = jw_matrix([&] {
      FermionOperator op;
      for (int j = 0; j < n; j++) op.push_back(number_term(j, 1.0));
      return op;
    }(), n);
    EXPECT_LT((hd * num - num * hd).norm(), 1e-10);
    QuadraticHamiltonian hp = random_quadratic(n, true, rng);
    if (n >= 2) {
      ComplexMatrix hpd = dense_hamiltonian(hp);
      EXPECT_GT((hpd * num - num * hpd).norm(), 1e-3);
    }
  }
}

TEST(GaussianGroundState, PositiveDiagonalGivesVacuum) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 1, 2, 3;
  GroundState gs = gaussian_ground_state(QuadraticHamiltonian::number_conserving(m));
  EXPECT_EQ(gs.state, vacuum(3));
  EXPECT_NEAR(gs.energy, 0, 1e-12);
  EXPECT_FALSE(gs.degenerate);
  EXPECT_EQ(gs.parity, 1);
}

TEST(GaussianGroundState, OneNegativeOrbitalFilled) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 1, -2, 3;
  GroundState gs = gaussian_ground_state(QuadraticHamiltonian::number_conserving(m));
  EXPECT_LT((gs.state - basis_state(3, 2)).norm(), 1e-12);
  EXPECT_NEAR(gs.energy, -2, 1e-12);
  EXPECT_EQ(gs.parity, -1);
}

TEST(GaussianGroundState, EnergyMatchesDecomposition) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 6; n++) {
    QuadraticHamiltonian h = random_quadratic(n, true, rng);
    GroundState gs = gaussian_ground_state(h);
    EXPECT_NEAR(gs.energy, diagonalize_quadratic(h).ground_energy(), 1e-9);
    EXPECT_NE(parity_of(gs.state), 0);
    ComplexMatrix hd = dense_hamiltonian(h);
    EXPECT_NEAR(gs.state.dot(hd * gs.state).real(), gs.energy, 1e-10);
    // Largest amplitude is real and positive.
    Eigen::Index idx;
    gs.state.cwiseAbs().maxCoeff(&idx);
    EXPECT_NEAR(gs.state(idx).imag(), 0.0, 1e-14);
    EXPECT_GT(gs.state(idx).real(), 0.0);
  }
}

TEST(GaussianGroundState, DegenerateParityFlagged) {
  // A zero mode makes both parities ground states.
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m.diagonal() << 0, 1;
  auto h = QuadraticHamiltonian::number_conserving(m);
  GroundState even = gaussian_ground_state(h, +1);
  GroundState odd = gaussian_ground_state(h, -1);
  EXPECT_TRUE(even.degenerate);
  EXPECT_EQ(even.parity, 1);
  EXPECT_EQ(odd.parity, -1);
  EXPECT_EQ(even.candidates.size(), 2u);
}

TEST(Propagator, ZeroTimeIsIdentity) {
  EXPECT_LT((single_particle_propagator(jx(), 0.0) - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(Propagator, HalfTurnOfJx) {
  ComplexMatrix expect = ComplexMatrix::Zero(3, 3);
  expect(0, 2) = expect(2, 0) = expect(1, 1) = -1;
  ComplexMatrix u = single_particle_propagator(jx(), kPi);
  EXPECT_LT((u - expect).norm(), 1e-12);
  EXPECT_LT((u - (ComplexMatrix::Identity(3, 3) - 2 * jx() * jx())).norm(), 1e-12);
  EXPECT_LT(unitarity_error(single_particle_propagator(jx(), 0.7)), 1e-11);
}

TEST(Propagator, ModeSwapIdentity) {
  // exp(-i pi N) exp(-i pi H_JX) exchanges modes one and three.
  FermionOperator number;
  for (int j = 0; j < 3; j++) number.push_back(number_term(j, 1.0));
  ComplexMatrix u = expm_hermitian(jw_matrix(number, 3), kPi) * expm_hermitian(jw_matrix(hopping_operator(jx()), 3), kPi);
  ComplexMatrix expect(8, 8);
  for (int s = 0; s < 8; s++) expect.col(s) = permute_modes(basis_state(3, s), {2, 1, 0});
  EXPECT_LT((u - expect).cwiseAbs().maxCoeff(), 1e-12);
  // The phase-fix term commutes with the hopping evolution.
  ComplexMatrix a = expm_hermitian(jw_matrix(number, 3), kPi);
  ComplexMatrix b = expm_hermitian(jw_matrix(hopping_operator(jx()), 3), kPi);
  EXPECT_LT((a * b - b * a).norm(), 1e-12);
}

TEST(Propagator, HeisenbergIsomorphism) {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 5; n++) {
    QuadraticHamiltonian h = random_quadratic(n, false, rng);
    double tau = 0.37 * n;
    ComplexMatrix u = expm_hermitian(dense_hamiltonian(h), tau);
    ComplexMatrix p = single_particle_propagator(h.m, tau);
    for (int j = 0; j < n; j++) {
      ComplexMatrix lhs = u * jw_matrix(creation(j), n) * u.adjoint();
      ComplexMatrix rhs = ComplexMatrix::Zero(1 << n, 1 << n);
      for (int k = 0; k < n; k++) rhs += p(j, k) * jw_matrix(creation(k), n);
      EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(PermuteModes, MatchesOperatorConjugation) {
  std::mt19937_64 rng(7);
  const int n = 4;
  std::vector<int> perm = {2, 0, 3, 1};
  Statevector psi = random_state(n, rng);
  // Applying c+_j before relabeling equals applying c+_{perm[j]} after.
  for (int j = 0; j < n; j++) {
    Statevector a = permute_modes(apply_term(creation(j), psi), perm);
    Statevector b = apply_term(creation(perm[j]), permute_modes(psi, perm));
    EXPECT_LT((a - b).norm(), 1e-13);
  }
  std::vector<int> inv(n);
  for (int i = 0; i < n; i++) inv[perm[i]] = i;
  EXPECT_LT((permute_modes(permute_modes(psi, perm), inv) - psi).norm(), 1e-14);
}
