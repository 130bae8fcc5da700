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

#ifndef FERMIFORGE_SIMULATOR_HPP_
#define FERMIFORGE_SIMULATOR_HPP_

#include <string>

#include "fermiforge/circuit.hpp"
#include "fermiforge/fock.hpp"

namespace fermiforge {

inline constexpr int kMaxSimQubits = 26;
inline constexpr int kMaxUnitaryQubits = 12;

void apply_gate(Statevector& psi, const Gate& g);
/// Applies every gate in time order, then multiplies by the global phase.
void apply_circuit_inplace(Statevector& psi, const Circuit& c);
Statevector apply_circuit(const Statevector& psi, const Circuit& c);

/// Full unitary of a circuit, global phase included.
ComplexMatrix circuit_unitary(const Circuit& c);

/// |<a|b>|^2.
double fidelity(const Statevector& a, const Statevector& b);

/// Normalized Gaussian-random state.
template <class Rng>
Statevector random_state(int n_qubits, Rng& rng);

/// Little-endian: int64 qubit count, then interleaved f64 (re, im).
void write_statevector(const std::string& path, const Statevector& psi);
Statevector read_statevector(const std::string& path);

}  // namespace fermiforge

#include <random>

namespace fermiforge {

template <class Rng>
Statevector random_state(int n_qubits, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Statevector psi(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < psi.size(); i++) {
    psi(i) = Complex(normal(rng), normal(rng));
  }
  psi.normalize();
  return psi;
}

}  // namespace fermiforge

#endif  // FERMIFORGE_SIMULATOR_HPP_
