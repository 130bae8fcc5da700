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

#ifndef FERMIFORGE_HUBBARD_HPP_
#define FERMIFORGE_HUBBARD_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/fock.hpp"
#include "fermiforge/lattice.hpp"

namespace fermiforge {

constexpr int kUp = 0;
constexpr int kDown = 1;

/// A nearest-neighbour bond between snake site indices, a < b.
struct Bond {
  int a = 0;
  int b = 0;
  bool vertical = false;
};

/// Bonds of the lattice. Periodic lattices add wrap-around bonds; along a
/// length-2 direction the wrap bond repeats the inner one.
std::vector<Bond> lattice_bonds(const Lattice2D& lattice, bool periodic);
/// Diagonal (next-nearest) bonds, two per plaquette.
std::vector<Bond> diagonal_bonds(const Lattice2D& lattice, bool periodic);

struct HubbardSpec {
  Lattice2D lattice;
  double t = 1.0;
  /// Per-bond overrides keyed by (min site, max site).
  std::map<std::pair<int, int>, double> t_bonds;
  double u = 0.0;
  /// Site potentials and fields; empty means zero.
  std::vector<double> eps;
  double mu = 0.0;
  std::vector<double> h;
  bool periodic = false;

  double hopping(const Bond& b) const;
  double eps_at(int site) const;
  double h_at(int site) const;
  void validate() const;
};

struct DWaveSpec {
  Lattice2D lattice;
  double t = 1.0;
  double mu = 0.0;
  double delta = 0.0;
  bool periodic = false;

  /// +delta/2 on horizontal bonds, -delta/2 on vertical ones.
  double pairing(const Bond& b) const { return b.vertical ? -delta / 2 : delta / 2; }
};

struct AdiabaticSchedule {
  double total_time = 1.0;
  int steps = 1;
  double zeta = 0.0;
  double eta = 0.0;

  void validate() const;
};

enum class LayoutKind {
  /// Snake over a 2 n_x wide row with (site up, site down) adjacent.
  kInterleaved,
  /// Up chain then down chain, row-major within each chain.
  kLadder,
  /// Up block then down block, snake order within each block.
  kBlocked,
};

struct SpinLayout {
  LayoutKind kind = LayoutKind::kInterleaved;
  Lattice2D lattice;

  int n_modes() const { return 2 * lattice.n_sites(); }
  int mode(int site, int spin) const;
  /// The wide lattice whose snake order the interleaved layout follows.
  Lattice2D mode_lattice() const { return Lattice2D(2 * lattice.n_x(), lattice.n_y()); }
};

FermionOperator hubbard_operator(const HubbardSpec& spec, const SpinLayout& layout);
/// Hopping part only (the first term of the Hubbard Hamiltonian).
FermionOperator hopping_operator(const HubbardSpec& spec, const SpinLayout& layout, bool vertical_only = false,
                                 bool horizontal_only = false);
/// U n_up n_down plus site potentials, chemical potential and field.
FermionOperator onsite_operator(const HubbardSpec& spec, const SpinLayout& layout);
FermionOperator dwave_operator(const DWaveSpec& spec, const SpinLayout& layout);
/// - sum_b w_b (c+_{a up} c+_{b down} - c+_{a down} c+_{b up}) + h.c.
FermionOperator singlet_pairing(const std::vector<std::pair<Bond, Complex>>& weighted, const SpinLayout& layout);

/// (1-s) H_DW + s H_FH plus the zeta (nearest-neighbour d-wave) and eta
/// (diagonal, imaginary) pairing terms.
FermionOperator adiabatic_operator(const HubbardSpec& fh, const DWaveSpec& dw, const AdiabaticSchedule& sched,
                                   double s);
/// Dense form of adiabatic_operator in the interleaved layout.
ComplexMatrix build_adiabatic_hamiltonian(const HubbardSpec& fh, const DWaveSpec& dw,
                                          const AdiabaticSchedule& sched, double s);

/// A compiled step together with its pieces. Part i realizes the product of
/// exp(-i dt F) over fragments[i], first entry applied first, with ancillas
/// in and out |0>.
struct TrotterStep {
  SpinLayout layout;
  Circuit circuit;
  std::vector<std::string> part_names;
  std::vector<Circuit> parts;
  std::vector<std::vector<FermionOperator>> fragments;
  /// Mode found at each qubit after the step; identity unless the scheme
  /// leaves the register reordered.
  std::vector<int> final_order;
};

/// Hop exp(i t dt (c+_a c_b + h.c.)) on adjacent qubits a < b as PHASE + GIVENS.
std::vector<Gate> hop_gates(int a, int b, double t, double dt, bool bare = false);

/// exp(-i dt sum -t_e (c+_j c_k + h.c.)) over the vertical edges of a snake
/// lattice, even row pairs then odd ones, dressed by the gamma circuit.
std::vector<Gate> vertical_hops_gamma(const Lattice2D& modes, const std::vector<double>& t_edges, double dt);
/// The same product using one parity ancilla per row pair, starting at
/// qubit `first_ancilla`.
std::vector<Gate> vertical_hops_ancilla(const Lattice2D& modes, const std::vector<double>& t_edges, double dt,
                                        int first_ancilla);
/// Ancillas needed by vertical_hops_gamma / vertical_hops_ancilla.
int gamma_ancillas(const Lattice2D& modes);
int pair_ancillas(const Lattice2D& modes);

/// Horizontal hops, vertical hops, then on-site and local terms.
TrotterStep synth_trotter_step_2d(const HubbardSpec& spec, double dt);
/// Vertical sub-step of the 2D step with ancilla parity tracking instead of gamma.
TrotterStep synth_vertical_hopping_ancilla(const HubbardSpec& spec, double dt);

enum class LadderScheme {
  /// Transpose neighbouring row pairs and undo, twice per step.
  kRowPairs,
  /// Transpose the whole chain once; the step ends in column-major order.
  kFullTranspose,
};

TrotterStep synth_trotter_step_ladder(const HubbardSpec& spec, double dt,
                                      LadderScheme scheme = LadderScheme::kRowPairs);

/// Adjacent FSWAPs moving the mode at position i to position target[i]
/// (odd-even transposition sort; one FSWAP per inversion).
std::vector<Gate> fswap_network(const std::vector<int>& target, int offset = 0);
/// Two stacked rows of length n, row-major to column-major.
std::vector<Gate> in_situ_transposition(int n, int offset = 0);
/// Full n_x x n_y row-major to column-major reorder of one chain.
std::vector<Gate> full_transposition(int n_x, int n_y, int offset = 0);
/// Mode label at each position after running FSWAPs on labels 0..n-1.
std::vector<int> track_fswaps(const std::vector<Gate>& gates, int n);

struct LadderCounts {
  int n_trans = 0;
  int n_int = 0;
  int n_hop = 0;
  int total() const { return n_trans + n_int + n_hop; }
};

/// Closed-form two-qubit counts of the row-pair ladder scheme.
LadderCounts ladder_closed_form(int n_x, int n_y);

struct StepCheck {
  /// Worst part-versus-fragment deviation; -1 when parts leave the register
  /// reordered and are only checked as a whole.
  double part_error = -1.0;
  /// Whole step against the ordered fragment product, after undoing
  /// final_order.
  double step_error = 0.0;
  /// Weight left on ancilla-excited states.
  double ancilla_leak = 0.0;
};

/// Random-state comparison against Taylor-propagated fragment exponentials.
StepCheck verify_trotter_step(const TrotterStep& step, double dt, int trials, uint64_t seed);

}  // namespace fermiforge

#endif  // FERMIFORGE_HUBBARD_HPP_
