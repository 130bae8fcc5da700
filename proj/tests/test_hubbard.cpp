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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fermiforge/fock.hpp"
#include "fermiforge/gamma.hpp"
#include "fermiforge/hubbard.hpp"
#include "fermiforge/simulator.hpp"
#include "test_support.hpp"

using namespace fermiforge;
using testing_support::Mat;
using testing_support::Vec;

namespace {

int snake(int nx, int row, int col) { return row * nx + (row % 2 ? nx - 1 - col : col); }

Mat oracle_term(const FermionTerm& t, int n) {
  Mat m = Mat::Identity(1 << n, 1 << n);
  for (const auto& f : t.factors) {
    m = m * (f.dagger ? testing_support::raise(f.mode, n) : testing_support::lower(f.mode, n));
  }
  return t.coefficient * m;
}

Mat oracle_op(const FermionOperator& op, int n) {
  Mat m = Mat::Zero(1 << n, 1 << n);
  for (const auto& t : op) m += oracle_term(t, n);
  return m;
}

Mat number_op(int n) {
  Mat m = Mat::Zero(1 << n, 1 << n);
  for (int s = 0; s < (1 << n); s++) m(s, s) = std::popcount(static_cast<unsigned>(s));
  return m;
}

// Open-boundary Hubbard model written against an explicit mode map.
template <class ModeFn>
Mat oracle_hubbard(int nx, int ny, double t, double u, double mu, ModeFn mode) {
  const int n = 2 * nx * ny;
  using testing_support::lower;
  using testing_support::raise;
  Mat h = Mat::Zero(1 << n, 1 << n);
  auto hop = [&](int a, int b) {
    h += -t * (raise(a, n) * lower(b, n) + raise(b, n) * lower(a, n));
  };
  for (int r = 0; r < ny; r++)
    for (int c = 0; c < nx; c++)
      for (int s = 0; s < 2; s++) {
        if (c + 1 < nx) hop(mode(r, c, s), mode(r, c + 1, s));
        if (r + 1 < ny) hop(mode(r, c, s), mode(r + 1, c, s));
        h += -mu * raise(mode(r, c, s), n) * lower(mode(r, c, s), n);
      }
  for (int r = 0; r < ny; r++)
    for (int c = 0; c < nx; c++) {
      int a = mode(r, c, 0), b = mode(r, c, 1);
      h += u * raise(a, n) * lower(a, n) * raise(b, n) * lower(b, n);
    }
  return h;
}

// Random system state on the low qubits, ancillas |0>.
Statevector padded_random(int n_sys, int n_total, std::mt19937_64& rng) {
  Statevector psi = Statevector::Zero(Eigen::Index{1} << n_total);
  psi.head(Eigen::Index{1} << n_sys) = testing_support::random_vec(1 << n_sys, rng);
  return psi;
}

// Action of one term on a state, written with explicit JW signs.
Vec apply_term_bits(const FermionTerm& t, const Vec& psi) {
  Vec out = Vec::Zero(psi.size());
  for (Eigen::Index s0 = 0; s0 < psi.size(); s0++) {
    if (psi(s0) == 0.0) continue;
    uint64_t s = s0;
    double sign = 1;
    bool alive = true;
    for (auto it = t.factors.rbegin(); it != t.factors.rend() && alive; ++it) {
      uint64_t bit = uint64_t{1} << it->mode;
      if (((s & bit) != 0) == it->dagger) {
        alive = false;
        break;
      }
      if (std::popcount(s & (bit - 1)) % 2) sign = -sign;
      s ^= bit;
    }
    if (alive) out(s) += t.coefficient * sign * psi(s0);
  }
  return out;
}

Vec apply_op_bits(const FermionOperator& op, const Vec& psi) {
  Vec out = Vec::Zero(psi.size());
  for (const auto& t : op) out += apply_term_bits(t, psi);
  return out;
}

// exp(-i dt H) psi by Taylor series over short substeps.
Vec expmv_bits(const FermionOperator& op, double dt, Vec psi) {
  const int sub = 8;
  const double tau = dt / sub;
  for (int k = 0; k < sub; k++) {
    Vec term = psi;
    Vec acc = psi;
    for (int order = 1; order <= 30; order++) {
      term = apply_op_bits(op, term) * std::complex<double>(0, -tau / order);
      acc += term;
      if (term.norm() < 1e-16) break;
    }
    psi = acc;
  }
  return psi;
}

Vec evolve_fragments(const std::vector<FermionOperator>& frags, double dt, Vec psi) {
  for (const auto& f : frags) psi = expmv_bits(f, dt, psi);
  return psi;
}

// Maximum deviation of circuit output from `expected(psi)` on the system
// block, plus the weight left on ancilla-excited states.
template <class Fn>
double compare_on_system(const Circuit& c, Fn expected, int n_sys, int trials, std::mt19937_64& rng) {
  double worst = 0;
  const Eigen::Index d = Eigen::Index{1} << n_sys;
  for (int i = 0; i < trials; i++) {
    Statevector psi = padded_random(n_sys, c.n_qubits(), rng);
    Statevector out = apply_circuit(psi, c);
    Vec want = expected(Vec(psi.head(d)));
    worst = std::max(worst, (out.head(d) - want).cwiseAbs().maxCoeff());
    worst = std::max(worst, out.tail(out.size() - d).norm());
  }
  return worst;
}

double compare_on_system(const Circuit& c, const Mat& expected, int n_sys, int trials, std::mt19937_64& rng) {
  return compare_on_system(c, [&](const Vec& v) -> Vec { return expected * v; }, n_sys, trials, rng);
}

Mat ordered_product(const std::vector<FermionOperator>& frags, int n, double dt) {
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (const auto& f : frags) u = testing_support::expm_minus_i(oracle_op(f, n), dt) * u;
  return u;
}

HubbardSpec spec_of(int nx, int ny, double t, double u, double mu) {
  HubbardSpec s{Lattice2D(nx, ny)};
  s.t = t;
  s.u = u;
  s.mu = mu;
  return s;
}

int two_qubit(const Circuit& c) {
  int n = 0;
  for (const Gate& g : c.gates()) n += gate_arity(g.kind) == 2;
  return n;
}

int count_kind(const Circuit& c, GateKind k) {
  int n = 0;
  for (const Gate& g : c.gates()) n += g.kind == k;
  return n;
}

}  // namespace

TEST(Bonds, OpenAndPeriodicCounts) {
  EXPECT_EQ(lattice_bonds(Lattice2D(3, 2), false).size(), 7u);
  EXPECT_EQ(lattice_bonds(Lattice2D(3, 3), true).size(), 18u);
  // length-2 directions double the bond
  EXPECT_EQ(lattice_bonds(Lattice2D(2, 2), true).size(), 8u);
  for (const Bond& b : lattice_bonds(Lattice2D(4, 3), true)) EXPECT_LT(b.a, b.b);
  EXPECT_EQ(diagonal_bonds(Lattice2D(3, 3), false).size(), 8u);
}

TEST(Layouts, ModesAreBijective) {
  Lattice2D lat(3, 2);
  for (LayoutKind k : {LayoutKind::kInterleaved, LayoutKind::kLadder, LayoutKind::kBlocked}) {
    SpinLayout L{k, lat};
    std::vector<int> seen(L.n_modes(), 0);
    for (int j = 0; j < lat.n_sites(); j++)
      for (int s : {kUp, kDown}) seen.at(L.mode(j, s))++;
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
  }
  SpinLayout inter{LayoutKind::kInterleaved, lat};
  EXPECT_EQ(inter.mode(lat.index(1, 0), kUp), snake(6, 1, 0));
  EXPECT_EQ(inter.mode(lat.index(1, 0), kDown), snake(6, 1, 1));
  SpinLayout ladder{LayoutKind::kLadder, lat};
  EXPECT_EQ(ladder.mode(lat.index(1, 0), kDown), 6 + 3);
}

TEST(Operators, HubbardMatchesOracle) {
  HubbardSpec spec = spec_of(2, 2, 0.7, 2.3, 0.4);
  SpinLayout L{LayoutKind::kInterleaved, spec.lattice};
  Mat want = oracle_hubbard(2, 2, 0.7, 2.3, 0.4, [](int r, int c, int s) { return snake(4, r, 2 * c + s); });
  EXPECT_LT((oracle_op(hubbard_operator(spec, L), 8) - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((dense_hamiltonian(hubbard_operator(spec, L), 8) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Operators, FieldAndPotentialSplitSpins) {
  HubbardSpec spec = spec_of(2, 1, 0.0, 0.0, 0.0);
  spec.eps = {0.3, -0.1};
  spec.h = {0.2, 0.5};
  SpinLayout L{LayoutKind::kBlocked, spec.lattice};
  Mat h = oracle_op(onsite_operator(spec, L), 4);
  // single up electron on site 0: eps - h
  EXPECT_NEAR(h(1, 1).real(), 0.1, 1e-14);
  // single down electron on site 1: eps + h
  EXPECT_NEAR(h(8, 8).real(), 0.4, 1e-14);
}

TEST(Operators, AdiabaticEndpoints) {
  HubbardSpec fh = spec_of(2, 2, 1.0, 4.0, 0.3);
  DWaveSpec dw{Lattice2D(2, 2), 1.0, 0.3, 0.6, false};
  AdiabaticSchedule sched{10.0, 100, 0.0, 0.0};
  SpinLayout L{LayoutKind::kInterleaved, fh.lattice};
  ComplexMatrix h0 = build_adiabatic_hamiltonian(fh, dw, sched, 0.0);
  ComplexMatrix h1 = build_adiabatic_hamiltonian(fh, dw, sched, 1.0);
  EXPECT_LT((h1 - oracle_op(hubbard_operator(fh, L), 8)).cwiseAbs().maxCoeff(), 1e-12);

  // d-wave oracle: -t hops - mu N - sum_b D_b (a_up^+ b_dn^+ - a_dn^+ b_up^+ + h.c.)
  using testing_support::lower;
  using testing_support::raise;
  auto mode = [](int r, int c, int s) { return snake(4, r, 2 * c + s); };
  Mat want = oracle_hubbard(2, 2, 1.0, 0.0, 0.3, mode);
  auto pair = [&](int r1, int c1, int r2, int c2, double d) {
    Mat p = raise(mode(r1, c1, 0), 8) * raise(mode(r2, c2, 1), 8) -
            raise(mode(r1, c1, 1), 8) * raise(mode(r2, c2, 0), 8);
    want -= d * (p + p.adjoint());
  };
  pair(0, 0, 0, 1, 0.3);
  pair(1, 0, 1, 1, 0.3);
  pair(0, 0, 1, 0, -0.3);
  pair(0, 1, 1, 1, -0.3);
  EXPECT_LT((h0 - want).cwiseAbs().maxCoeff(), 1e-12);

  Mat mid = build_adiabatic_hamiltonian(fh, dw, sched, 0.25);
  EXPECT_LT((mid - (0.75 * h0 + 0.25 * h1)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(build_adiabatic_hamiltonian(fh, dw, sched, 1.5), Error);
}

TEST(Operators, GapTermsBreakNumberConservation) {
  HubbardSpec fh = spec_of(2, 2, 1.0, 4.0, 0.0);
  DWaveSpec dw{Lattice2D(2, 2), 1.0, 0.0, 0.5, false};
  Mat n = number_op(8);
  auto comm = [&](const AdiabaticSchedule& s) {
    Mat h = build_adiabatic_hamiltonian(fh, dw, s, 1.0);
    return (h * n - n * h).cwiseAbs().maxCoeff();
  };
  EXPECT_LT(comm({10.0, 10, 0.0, 0.0}), 1e-12);
  EXPECT_GT(comm({10.0, 10, 0.1, 0.0}), 1e-3);
  EXPECT_GT(comm({10.0, 10, 0.0, 0.1}), 1e-3);
  for (double s : {0.0, 0.3, 1.0}) {
    Mat h = build_adiabatic_hamiltonian(fh, dw, {10.0, 10, 0.2, 0.1}, s);
    EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(HopGates, MatchesTwoModeExponential) {
  for (auto [t, dt] : {std::pair{1.0, 0.1}, std::pair{-0.4, 0.7}, std::pair{2.0, -0.3}}) {
    Circuit c = schedule(hop_gates(0, 1, t, dt), 2);
    Mat h = -t * (testing_support::raise(0, 2) * testing_support::lower(1, 2) +
                  testing_support::raise(1, 2) * testing_support::lower(0, 2));
    EXPECT_LT((circuit_unitary(c) - testing_support::expm_minus_i(h, dt)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_TRUE(hop_gates(2, 3, 1.0, 0.0).empty());
}

TEST(Trotter2D, PartsMatchFragments2x2) {
  std::mt19937_64 rng(11);
  HubbardSpec spec = spec_of(2, 2, 0.8, 3.0, 0.5);
  const double dt = 0.37;
  TrotterStep step = synth_trotter_step_2d(spec, dt);
  ASSERT_EQ(step.parts.size(), 3u);
  EXPECT_EQ(step.circuit.n_qubits(), 10);
  Mat total = Mat::Zero(256, 256);
  Mat product = Mat::Identity(256, 256);
  for (size_t i = 0; i < step.parts.size(); i++) {
    Mat want = ordered_product(step.fragments[i], 8, dt);
    EXPECT_LT(compare_on_system(step.parts[i], want, 8, 4, rng), 1e-10) << step.part_names[i];
    for (const auto& f : step.fragments[i]) total += oracle_op(f, 8);
    product = want * product;
  }
  Mat h = oracle_hubbard(2, 2, 0.8, 3.0, 0.5, [](int r, int c, int s) { return snake(4, r, 2 * c + s); });
  EXPECT_LT((total - h).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(compare_on_system(step.circuit, product, 8, 4, rng), 1e-10);
}

TEST(Trotter2D, PartsMatchFragments3x2) {
  std::mt19937_64 rng(12);
  HubbardSpec spec = spec_of(3, 2, 1.1, 0.0, 0.0);
  spec.t_bonds[{spec.lattice.index(0, 1), spec.lattice.index(1, 1)}] = 0.3;
  const double dt = 0.21;
  TrotterStep step = synth_trotter_step_2d(spec, dt);
  for (size_t i = 0; i < 2; i++) {
    auto want = [&](const Vec& v) { return evolve_fragments(step.fragments[i], dt, v); };
    EXPECT_LT(compare_on_system(step.parts[i], want, 12, 2, rng), 1e-10) << step.part_names[i];
  }
}

TEST(Trotter2D, OnsiteIsCphaseOnly) {
  TrotterStep step = synth_trotter_step_2d(spec_of(3, 2, 0.0, 2.5, 0.0), 0.1);
  EXPECT_EQ(step.circuit.gates().size(), 6u);
  EXPECT_EQ(count_kind(step.circuit, GateKind::CPHASE), 6);
  EXPECT_EQ(step.circuit.depth(), 1);
}

TEST(Trotter2D, ZeroTimeIsEmpty) {
  for (auto* f : {synth_trotter_step_2d, synth_vertical_hopping_ancilla}) {
    TrotterStep step = f(spec_of(2, 3, 1.0, 4.0, 0.2), 0.0);
    EXPECT_TRUE(step.circuit.gates().empty());
  }
  EXPECT_TRUE(synth_trotter_step_ladder(spec_of(3, 3, 1.0, 4.0, 0.0), 0.0, LadderScheme::kRowPairs)
                  .circuit.gates()
                  .empty());
}

TEST(Trotter2D, RejectsPeriodic) {
  HubbardSpec spec = spec_of(2, 2, 1.0, 1.0, 0.0);
  spec.periodic = true;
  EXPECT_THROW(synth_trotter_step_2d(spec, 0.1), Error);
  EXPECT_THROW(synth_trotter_step_ladder(spec, 0.1, LadderScheme::kRowPairs), Error);
  spec.periodic = false;
  spec.eps = {1.0};
  EXPECT_THROW(synth_trotter_step_2d(spec, 0.1), Error);
}

TEST(Trotter2D, ConservesNumberOverManySteps) {
  HubbardSpec spec = spec_of(2, 2, 1.0, 4.0, 0.0);
  TrotterStep step = synth_trotter_step_2d(spec, 0.05);
  Statevector psi = Statevector::Zero(1 << 10);
  // two up, one down, spread over sectors with a superposition
  psi(0b00010011) = 0.6;
  psi(0b01100100) = Complex(0, 0.8);
  for (int i = 0; i < 100; i++) apply_circuit_inplace(psi, step.circuit);
  double in_sector = 0;
  for (int s = 0; s < 256; s++) in_sector += std::popcount(static_cast<unsigned>(s)) == 3 ? std::norm(psi(s)) : 0;
  EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
  EXPECT_NEAR(in_sector, 1.0, 1e-10);
}

TEST(VerticalHops, GammaMatchesOracle3x3) {
  std::mt19937_64 rng(5);
  Lattice2D lat(3, 3);
  std::vector<double> t(lat.vertical_edges().size());
  std::uniform_real_distribution<double> ud(-1, 1);
  for (double& x : t) x = ud(rng);
  Circuit c = schedule(vertical_hops_gamma(lat, t, 0.4), 9, gamma_ancillas(lat));
  FermionOperator even, odd;
  auto edges = lat.vertical_edges();
  for (size_t e = 0; e < edges.size(); e++) {
    FermionOperator& dst = lat.site(edges[e].j).row % 2 ? odd : even;
    dst.push_back(hopping_term(edges[e].j, edges[e].k, -t[e]));
    dst.push_back(hopping_term(edges[e].k, edges[e].j, -t[e]));
  }
  auto want = [&](const Vec& v) { return evolve_fragments({even, odd}, 0.4, v); };
  EXPECT_LT(compare_on_system(c, want, 9, 3, rng), 1e-10);

  Circuit a = schedule(vertical_hops_ancilla(lat, t, 0.4, 9), 9, pair_ancillas(lat));
  EXPECT_EQ(a.n_qubits(), 11);
  EXPECT_LT(compare_on_system(a, want, 9, 3, rng), 1e-10);
}

TEST(VerticalHops, GammaAndAncillaAgree4x4) {
  std::mt19937_64 rng(8);
  Lattice2D lat(4, 4);
  std::vector<double> t(lat.vertical_edges().size(), 1.0);
  t[3] = 0.5;
  Circuit g = schedule(vertical_hops_gamma(lat, t, 0.3), 16, gamma_ancillas(lat));
  Circuit a = schedule(vertical_hops_ancilla(lat, t, 0.3, 16), 16, pair_ancillas(lat));
  EXPECT_EQ(g.n_qubits(), 20);
  EXPECT_EQ(a.n_qubits(), 19);
  for (int trial = 0; trial < 2; trial++) {
    Statevector sys = testing_support::random_vec(1 << 16, rng);
    Statevector pg = Statevector::Zero(1 << 20);
    Statevector pa = Statevector::Zero(1 << 19);
    pg.head(1 << 16) = sys;
    pa.head(1 << 16) = sys;
    apply_circuit_inplace(pg, g);
    apply_circuit_inplace(pa, a);
    EXPECT_LT((pg.head(1 << 16) - pa.head(1 << 16)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(pg.tail((1 << 20) - (1 << 16)).norm(), 1e-10);
    EXPECT_LT(pa.tail((1 << 19) - (1 << 16)).norm(), 1e-10);
  }
}

TEST(VerticalHops, AncillaStepMatchesFragments) {
  std::mt19937_64 rng(21);
  HubbardSpec spec = spec_of(2, 2, 0.9, 0.0, 0.0);
  TrotterStep step = synth_vertical_hopping_ancilla(spec, 0.45);
  EXPECT_EQ(step.circuit.n_qubits(), 9);
  Mat want = ordered_product(step.fragments[0], 8, 0.45);
  EXPECT_LT(compare_on_system(step.circuit, want, 8, 4, rng), 1e-10);
}

TEST(Ladder, FswapNetworkIsMinimal) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 9; n++) {
    std::vector<int> target(n);
    for (int i = 0; i < n; i++) target[i] = i;
    std::shuffle(target.begin(), target.end(), rng);
    int inversions = 0;
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++) inversions += target[i] > target[j];
    auto gates = fswap_network(target, 3);
    EXPECT_EQ(static_cast<int>(gates.size()), inversions);
    // label originally at position i ends at target[i]
    auto labels = track_fswaps(gates, n + 3);
    for (int i = 0; i < n; i++) EXPECT_EQ(labels[3 + target[i]], 3 + i);
  }
  EXPECT_THROW(fswap_network({0, 0, 1}, 0), Error);
}

TEST(Ladder, FullTransposition3x3) {
  auto labels = track_fswaps(full_transposition(3, 3, 0), 9);
  std::vector<int> one_based;
  for (int l : labels) one_based.push_back(l + 1);
  EXPECT_EQ(one_based, (std::vector<int>{1, 4, 7, 2, 5, 8, 3, 6, 9}));
  // square transposition twice is the identity
  auto twice = full_transposition(3, 3, 0);
  auto more = full_transposition(3, 3, 0);
  twice.insert(twice.end(), more.begin(), more.end());
  auto back = track_fswaps(twice, 9);
  for (int i = 0; i < 9; i++) EXPECT_EQ(back[i], i);
}

TEST(Ladder, InSituTranspositionInterleavesRows) {
  for (int n = 1; n <= 6; n++) {
    auto labels = track_fswaps(in_situ_transposition(n, 0), 2 * n);
    for (int c = 0; c < n; c++) {
      EXPECT_EQ(labels[2 * c], c);
      EXPECT_EQ(labels[2 * c + 1], n + c);
    }
  }
}

TEST(Ladder, CountsMatchClosedForm) {
  for (int nx = 2; nx <= 6; nx++)
    for (int ny = nx; ny <= 6; ny++) {
      TrotterStep step = synth_trotter_step_ladder(spec_of(nx, ny, 1.0, 4.0, 0.0), 0.1, LadderScheme::kRowPairs);
      LadderCounts f = ladder_closed_form(nx, ny);
      EXPECT_EQ(count_kind(step.circuit, GateKind::FSWAP), f.n_trans);
      EXPECT_EQ(count_kind(step.circuit, GateKind::CPHASE), f.n_int);
      EXPECT_EQ(count_kind(step.circuit, GateKind::GIVENS), f.n_hop);
      EXPECT_EQ(two_qubit(step.circuit), f.total());
    }
  auto total = [](int n, LadderScheme s) {
    return two_qubit(synth_trotter_step_ladder(spec_of(n, n, 1.0, 4.0, 0.0), 0.1, s).circuit);
  };
  EXPECT_EQ(total(3, LadderScheme::kRowPairs), 57);
  EXPECT_EQ(total(3, LadderScheme::kFullTranspose), 51);
  EXPECT_EQ(total(5, LadderScheme::kRowPairs), 265);
  EXPECT_EQ(total(5, LadderScheme::kFullTranspose), 305);
}

TEST(Ladder, AgreesWith2DUpToRelabel) {
  std::mt19937_64 rng(33);
  for (auto [nx, ny] : {std::pair{2, 2}, std::pair{3, 2}}) {
    HubbardSpec spec = spec_of(nx, ny, 0.9, 2.0, 0.3);
    const int n = 2 * nx * ny;
    SpinLayout inter{LayoutKind::kInterleaved, spec.lattice};
    SpinLayout ladder{LayoutKind::kLadder, spec.lattice};
    std::vector<int> to_ladder(n);
    for (int j = 0; j < nx * ny; j++)
      for (int s : {kUp, kDown}) to_ladder[inter.mode(j, s)] = ladder.mode(j, s);
    TrotterStep two_d = synth_trotter_step_2d(spec, 0.3);
    for (LadderScheme scheme : {LadderScheme::kRowPairs, LadderScheme::kFullTranspose}) {
      TrotterStep lad = synth_trotter_step_ladder(spec, 0.3, scheme);
      Statevector psi = testing_support::random_vec(1 << n, rng);
      Statevector padded = Statevector::Zero(Eigen::Index{1} << two_d.circuit.n_qubits());
      padded.head(1 << n) = psi;
      Statevector want = permute_modes(apply_circuit(padded, two_d.circuit).head(1 << n), to_ladder);
      Statevector got = apply_circuit(permute_modes(psi, to_ladder), lad.circuit);
      // qubit q holds mode final_order[q]; move it home
      got = permute_modes(got, lad.final_order);
      EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(StepCheck, AllVariantsPassAndMismatchIsCaught) {
  HubbardSpec spec = spec_of(2, 2, 1.0, 4.0, 0.3);
  const double dt = 0.05;
  for (const TrotterStep& step :
       {synth_trotter_step_2d(spec, dt), synth_vertical_hopping_ancilla(spec, dt),
        synth_trotter_step_ladder(spec, dt, LadderScheme::kRowPairs),
        synth_trotter_step_ladder(spec, dt, LadderScheme::kFullTranspose)}) {
    StepCheck c = verify_trotter_step(step, dt, 3, 7);
    EXPECT_LT(c.step_error, 1e-10);
    EXPECT_LT(c.part_error, 1e-10);
    EXPECT_LT(c.ancilla_leak, 1e-10);
  }
  StepCheck full = verify_trotter_step(synth_trotter_step_ladder(spec, dt, LadderScheme::kFullTranspose), dt, 1, 1);
  EXPECT_EQ(full.part_error, -1.0);
  StepCheck wrong = verify_trotter_step(synth_trotter_step_2d(spec, dt), 1.1 * dt, 2, 7);
  EXPECT_GT(wrong.step_error, 1e-4);
}
