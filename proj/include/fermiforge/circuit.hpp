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

#ifndef FERMIFORGE_CIRCUIT_HPP_
#define FERMIFORGE_CIRCUIT_HPP_

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fermiforge/linalg.hpp"

namespace fermiforge {

enum class GateKind {
  GIVENS,
  BARE_GIVENS,
  PARTICLE_HOLE_X,
  CZ,
  CNOT,
  SWAP,
  FSWAP,
  X,
  PHASE,
  CPHASE,
  RZ,
  RY,
  BOGOLIUBOV,
  ISWAP_EVOLVE,
};

std::string_view gate_kind_name(GateKind kind);
/// Throws on unknown names.
GateKind gate_kind_from_name(std::string_view name);
int gate_arity(GateKind kind);
int gate_param_count(GateKind kind);

/// A single gate. Two-qubit gates act on (q0, q1); for CNOT q0 is the control.
///
/// Two-qubit matrices are written in the local basis |b0 b1> with index
/// b0 + 2*b1, where b0 is the bit of q0.
///
///   GIVENS(t, p)    c+_{q0} -> G00 c+_{q0} + G01 c+_{q1}, c+_{q1} -> G10 c+_{q0} + G11 c+_{q1}
///   BARE_GIVENS     same 4x4 matrix, used on pairs that are not JWT-adjacent
///   BOGOLIUBOV(t)   exp(t (c+_{q0} c+_{q1} - h.c.)) with q0 treated as the lower mode
///   ISWAP_EVOLVE(a) exp(i a (XX + YY) / 2)
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = 0;
  int q1 = -1;
  double p0 = 0.0;
  double p1 = 0.0;

  int arity() const { return gate_arity(kind); }
  bool acts_on(int q) const { return q == q0 || (q1 >= 0 && q == q1); }
  std::vector<double> params() const;
  bool operator==(const Gate& other) const = default;

  static Gate givens(int j, int k, double theta, double phi) { return {GateKind::GIVENS, j, k, theta, phi}; }
  static Gate bare_givens(int j, int k, double theta, double phi) {
    return {GateKind::BARE_GIVENS, j, k, theta, phi};
  }
  static Gate particle_hole_x(int q) { return {GateKind::PARTICLE_HOLE_X, q}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, a, b}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target}; }
  static Gate swap(int a, int b) { return {GateKind::SWAP, a, b}; }
  static Gate fswap(int a, int b) { return {GateKind::FSWAP, a, b}; }
  static Gate x(int q) { return {GateKind::X, q}; }
  static Gate phase(int q, double lambda) { return {GateKind::PHASE, q, -1, lambda}; }
  static Gate cphase(int a, int b, double lambda) { return {GateKind::CPHASE, a, b, lambda}; }
  static Gate rz(int q, double lambda) { return {GateKind::RZ, q, -1, lambda}; }
  static Gate ry(int q, double lambda) { return {GateKind::RY, q, -1, lambda}; }
  static Gate bogoliubov(int a, int b, double theta) { return {GateKind::BOGOLIUBOV, a, b, theta}; }
  static Gate iswap_evolve(int a, int b, double alpha) { return {GateKind::ISWAP_EVOLVE, a, b, alpha}; }
};

/// 2x2 or 4x4 unitary in the local basis documented on Gate.
ComplexMatrix gate_matrix(const Gate& g);

/// Gates that undo `g`, in time order.
std::vector<Gate> inverse_gates(const Gate& g);

void validate_gate(const Gate& g, int n_qubits);

struct Circuit {
  int n_system = 0;
  int n_ancilla = 0;
  Complex global_phase = 1.0;
  std::vector<std::vector<Gate>> layers;

  int n_qubits() const { return n_system + n_ancilla; }
  int depth() const { return static_cast<int>(layers.size()); }
  /// All gates in time order, layer by layer.
  std::vector<Gate> gates() const;
  /// Throws if a layer has overlapping gates or indices are out of range.
  void validate() const;
  bool operator==(const Circuit& other) const = default;
};

/// Greedy ASAP layering: each gate goes in the first layer after the last
/// layer touching any of its qubits.
Circuit schedule(const std::vector<Gate>& gates, int n_system, int n_ancilla = 0,
                 Complex global_phase = 1.0);

/// a followed by b, rescheduled. Register sizes are the maxima of both.
Circuit concat(const Circuit& a, const Circuit& b);
Circuit inverse(const Circuit& c);

struct Metrics {
  int two_qubit_count = 0;
  int total_count = 0;
  int depth = 0;
  std::map<std::string, int> by_kind;
};

Metrics metrics(const Circuit& c);

/// Native template: {CNOT, RY, PHASE}.
std::vector<Gate> lower_givens_gate(const Gate& g);
Circuit lower_givens(const Circuit& c);
/// FSWAP -> ISWAP_EVOLVE(pi/2) + RZ(-pi/2) on both qubits, global phase -i each.
Circuit lower_fswap(const Circuit& c);

}  // namespace fermiforge

#endif  // FERMIFORGE_CIRCUIT_HPP_
