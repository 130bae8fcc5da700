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

#include "fermiforge/bcs.hpp"

#include <cmath>
#include <numbers>

#include "fermiforge/fourier.hpp"
#include "fermiforge/hubbard.hpp"

namespace fermiforge {

BogoliubovAngles bcs_angles(double xi, double delta) {
  if (!std::isfinite(xi) || !std::isfinite(delta)) {
    throw Error("BCS parameters must be finite");
  }
  BogoliubovAngles a;
  a.xi = xi;
  a.delta = delta == 0 ? 0.0 : delta;
  a.theta = 0.5 * std::atan2(a.delta, xi);
  a.u = std::cos(a.theta);
  a.v = std::sin(a.theta);
  return a;
}

std::vector<BogoliubovAngles> bcs_momentum_angles(const Lattice2D& lattice, double t, double mu, double delta) {
  std::vector<BogoliubovAngles> out;
  const double two_pi = 2 * std::numbers::pi;
  for (int ky = 0; ky < lattice.n_y(); ky++) {
    for (int kx = 0; kx < lattice.n_x(); kx++) {
      double cx = std::cos(two_pi * kx / lattice.n_x());
      double cy = std::cos(two_pi * ky / lattice.n_y());
      BogoliubovAngles a = bcs_angles(-2 * t * (cx + cy) - mu, delta * (cx - cy));
      a.kx = kx;
      a.ky = ky;
      out.push_back(a);
    }
  }
  return out;
}

BcsCircuit synth_bcs_momentum(const Lattice2D& lattice, double t, double mu, double delta) {
  const int n = lattice.n_sites();
  BcsCircuit out;
  out.angles = bcs_momentum_angles(lattice, t, mu, delta);

  std::vector<Gate> pairs;
  std::vector<int> target(2 * n);
  for (int p = 0; p < n; p++) {
    const BogoliubovAngles& a = out.angles[p];
    if (a.theta != 0) pairs.push_back(Gate::bogoliubov(2 * p, 2 * p + 1, a.theta));
    target[2 * p] = lattice.index(a.ky, a.kx);
    target[2 * p + 1] = n + lattice.index(a.ky, a.kx);
  }
  out.pairs = schedule(pairs, 2 * n);
  out.reorder = schedule(fswap_network(target, 0), 2 * n);

  std::vector<Gate> fourier;
  int n_qubits = 2 * n;
  for (int spin : {kUp, kDown}) {
    const int sign = spin == kUp ? 1 : -1;
    FactorizedTransform f =
        build_factorized_transform(lattice, {dft_matrix(lattice.n_x(), sign)}, {dft_matrix(lattice.n_y(), sign)});
    // system i -> spin * N + i; ancillas shared above both blocks
    auto remap = [&](int q) { return q < n ? spin * n + q : n + q; };
    for (Gate g : f.circuit.gates()) {
      g.q0 = remap(g.q0);
      if (g.q1 >= 0) g.q1 = remap(g.q1);
      fourier.push_back(g);
    }
    n_qubits = std::max(n_qubits, n + f.circuit.n_qubits());
  }
  out.fourier = schedule(fourier, 2 * n, n_qubits - 2 * n);
  out.pairs.n_ancilla = out.reorder.n_ancilla = n_qubits - 2 * n;
  out.circuit = concat(concat(out.pairs, out.reorder), out.fourier);
  return out;
}

}  // namespace fermiforge
