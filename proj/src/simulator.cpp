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

#include "fermiforge/simulator.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "fermiforge/parallel.hpp"

namespace fermiforge {

namespace {

// Inserts a zero bit at position `q` of `x`.
inline uint64_t insert_zero(uint64_t x, int q) {
  uint64_t low = x & ((uint64_t{1} << q) - 1);
  return ((x >> q) << (q + 1)) | low;
}

int qubits_of(const Statevector& psi) {
  int n = std::countr_zero(static_cast<uint64_t>(psi.size()));
  if ((uint64_t{1} << n) != static_cast<uint64_t>(psi.size())) {
    throw Error("statevector length is not a power of two");
  }
  return n;
}

}  // namespace

void apply_gate(Statevector& psi, const Gate& g) {
  const int n = qubits_of(psi);
  validate_gate(g, n);
  ComplexMatrix m = gate_matrix(g);
  Complex* a = psi.data();
  if (g.arity() == 1) {
    const uint64_t bit = uint64_t{1} << g.q0;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    parallel_for(int64_t{1} << (n - 1), [&](int64_t b, int64_t e) {
      for (int64_t x = b; x < e; x++) {
        uint64_t i0 = insert_zero(x, g.q0);
        uint64_t i1 = i0 | bit;
        Complex v0 = a[i0], v1 = a[i1];
        a[i0] = m00 * v0 + m01 * v1;
        a[i1] = m10 * v0 + m11 * v1;
      }
    });
    return;
  }
  const int lo = std::min(g.q0, g.q1);
  const int hi = std::max(g.q0, g.q1);
  const uint64_t b0 = uint64_t{1} << g.q0;
  const uint64_t b1 = uint64_t{1} << g.q1;
  Eigen::Matrix4cd m4 = m;
  parallel_for(int64_t{1} << (n - 2), [&](int64_t b, int64_t e) {
    for (int64_t x = b; x < e; x++) {
      uint64_t base = insert_zero(insert_zero(x, lo), hi);
      uint64_t idx[4] = {base, base | b0, base | b1, base | b0 | b1};
      Eigen::Vector4cd v(a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]);
      Eigen::Vector4cd w = m4 * v;
      for (int t = 0; t < 4; t++) {
        a[idx[t]] = w(t);
      }
    }
  });
}

void apply_circuit_inplace(Statevector& psi, const Circuit& c) {
  if (static_cast<int64_t>(psi.size()) != (int64_t{1} << c.n_qubits())) {
    throw Error("apply_circuit: state dimension does not match circuit register");
  }
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) {
      apply_gate(psi, g);
    }
  }
  psi *= c.global_phase;
}

Statevector apply_circuit(const Statevector& psi, const Circuit& c) {
  Statevector out = psi;
  apply_circuit_inplace(out, c);
  return out;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  const int n = c.n_qubits();
  if (n > kMaxUnitaryQubits) {
    throw Error("circuit_unitary: too many qubits");
  }
  const int64_t dim = int64_t{1} << n;
  ComplexMatrix u(dim, dim);
  for (int64_t s = 0; s < dim; s++) {
    Statevector col = basis_state(n, s);
    apply_circuit_inplace(col, c);
    u.col(s) = col;
  }
  return u;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.size() != b.size()) {
    throw Error("fidelity: dimension mismatch");
  }
  return std::norm(a.dot(b));
}

void write_statevector(const std::string& path, const Statevector& psi) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write '" + path + "'");
  }
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  int64_t n = qubits_of(psi);
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(psi.data()), psi.size() * sizeof(Complex));
}

Statevector read_statevector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path + "'");
  }
  int64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!in || n < 0 || n > kMaxSimQubits) {
    throw Error("bad statevector header in '" + path + "'");
  }
  Statevector psi(Eigen::Index{1} << n);
  in.read(reinterpret_cast<char*>(psi.data()), psi.size() * sizeof(Complex));
  if (!in) {
    throw Error("truncated statevector in '" + path + "'");
  }
  return psi;
}

}  // namespace fermiforge
