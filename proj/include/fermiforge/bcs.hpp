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

#ifndef FERMIFORGE_BCS_HPP_
#define FERMIFORGE_BCS_HPP_

#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/lattice.hpp"

namespace fermiforge {

/// Pairing angles of one (k up, -k down) pair; k = 2 pi (kx / n_x, ky / n_y).
struct BogoliubovAngles {
  int kx = 0;
  int ky = 0;
  double xi = 0.0;
  double delta = 0.0;
  double u = 1.0;
  double v = 0.0;
  double theta = 0.0;
};

/// xi = -2t (cos kx + cos ky) - mu, delta = Delta (cos kx - cos ky), with
/// u = cos theta >= 0, v = sin theta carrying the sign of delta.
BogoliubovAngles bcs_angles(double xi, double delta);

/// One entry per k, ordered by (ky, kx).
std::vector<BogoliubovAngles> bcs_momentum_angles(const Lattice2D& lattice, double t, double mu, double delta);

struct BcsCircuit {
  std::vector<BogoliubovAngles> angles;
  /// Pair layer on (2p, 2p+1), pair p holding k up and -k down.
  Circuit pairs;
  /// FSWAP network to the blocked layout: k up at index(ky, kx), -k down
  /// at N + index(ky, kx).
  Circuit reorder;
  /// Fourier transforms of both spin blocks; ancillas shared.
  Circuit fourier;
  Circuit circuit;
};

/// Circuit preparing the periodic d-wave mean-field ground state from the
/// vacuum, blocked spin layout (mode = spin * N + snake site).
BcsCircuit synth_bcs_momentum(const Lattice2D& lattice, double t, double mu, double delta);

}  // namespace fermiforge

#endif  // FERMIFORGE_BCS_HPP_
