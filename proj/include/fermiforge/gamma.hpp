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

#ifndef FERMIFORGE_GAMMA_HPP_
#define FERMIFORGE_GAMMA_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/lattice.hpp"

namespace fermiforge {

using Bitstring = std::vector<uint8_t>;

/// Qubit placement used by the parity-dressing circuit. System sites keep
/// their JWT index; a padding row (odd n_y) follows, then one ancilla per row.
struct GammaLayout {
  Lattice2D lattice;
  Lattice2D padded;
  int n_qubits = 0;

  explicit GammaLayout(const Lattice2D& lat);
  int ancilla(int row) const { return padded.n_sites() + row; }
  /// Qubit at horizontal slot 0..n_x of a padded row; slot n_x is the ancilla's home.
  int slot(int row, int s) const { return s == padded.n_x() ? ancilla(row) : padded.index(row, s); }
};

/// The four sweeps of the construction, in time order.
struct GammaStages {
  GammaLayout layout;
  std::array<std::vector<Gate>, 4> stages;
};

GammaStages build_gamma_stages(const Lattice2D& lattice, bool pad_odd_rows = false);

/// Diagonal +-1 unitary G with G^+ B G = B Z_{j+1}...Z_{k-1} for every bare
/// vertical hop B between JWT sites j < k. Needs even n_y unless
/// `pad_odd_rows`; a single row gives the empty circuit.
Circuit build_gamma(const Lattice2D& lattice, bool pad_odd_rows = false);

/// Classical tracker for the gamma circuit, 64 strings per pass.
class GammaOracle {
 public:
  explicit GammaOracle(const Lattice2D& lattice);

  const Lattice2D& lattice() const { return lattice_; }
  /// Bit i of words[q] is string i's value at system site q. Returns a mask
  /// of strings that pick up a minus sign.
  uint64_t minus_mask(const std::vector<uint64_t>& words) const;
  int phase(const Bitstring& s) const;
  std::vector<int> phases(const std::vector<Bitstring>& strings) const;

 private:
  Lattice2D lattice_;
  int n_qubits_ = 0;
  std::vector<Gate> gates_;
};

int gamma_phase(const Lattice2D& lattice, const Bitstring& s);

/// Checks gamma(s) gamma(s') = (-1)^(s_{j+1} + ... + s_{k-1}) where s' flips
/// bits j and k. Requires s_j + s_k = 1.
bool verify_parity_relation(const Lattice2D& lattice, const ParityEdge& edge, const Bitstring& s);
bool verify_parity_relation(const GammaOracle& oracle, const ParityEdge& edge, const Bitstring& s);

struct ParityCheckReport {
  int64_t samples = 0;
  int64_t failures = 0;
};

/// Random (vertical edge, string) pairs drawn from `seed`; deterministic for
/// any thread count.
ParityCheckReport check_random_parity(const Lattice2D& lattice, int64_t samples, uint64_t seed);

}  // namespace fermiforge

#endif  // FERMIFORGE_GAMMA_HPP_
