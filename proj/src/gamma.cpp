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

#include "fermiforge/gamma.hpp"

#include <atomic>
#include <bit>
#include <random>

#include "fermiforge/parallel.hpp"

namespace fermiforge {

GammaLayout::GammaLayout(const Lattice2D& lat) : lattice(lat), padded(lat.padded()) {
  n_qubits = lat.n_y() == 1 ? lat.n_sites() : padded.n_sites() + padded.n_y();
}

GammaStages build_gamma_stages(const Lattice2D& lattice, bool pad_odd_rows) {
  if (lattice.n_y() % 2 == 1 && lattice.n_y() > 1 && !pad_odd_rows) {
    throw Error("gamma needs an even number of rows, got " + lattice.name());
  }
  GammaStages out{GammaLayout(lattice), {}};
  if (lattice.n_y() == 1) {
    return out;
  }
  const GammaLayout& L = out.layout;
  const int nx = L.padded.n_x();
  const int ny = L.padded.n_y();

  // Stage 1: column parity basis, site (r, c) holds s(r..ny-1, c).
  auto& s1 = out.stages[0];
  for (int r = ny - 2; r >= 0; r--) {
    for (int c = 0; c < nx; c++) {
      s1.push_back(Gate::cnot(L.slot(r + 1, c), L.slot(r, c)));
    }
  }

  // Stage 2: ancillas sweep left. Before absorbing column c the ancilla of
  // row r holds the parity of rows >= r, columns > c.
  auto& s2 = out.stages[1];
  for (int c = nx - 1; c >= 0; c--) {
    for (int r = 0; r < ny; r++) {
      s2.push_back(Gate::swap(L.slot(r, c), L.slot(r, c + 1)));
    }
    for (int r = 0; r < ny; r += 2) {
      if (r + 2 < ny) s2.push_back(Gate::cz(L.slot(r, c + 1), L.slot(r + 2, c)));
      if (r > 0) s2.push_back(Gate::cz(L.slot(r, c + 1), L.slot(r, c)));
    }
    for (int r = 0; r < ny; r++) {
      s2.push_back(Gate::cnot(L.slot(r, c + 1), L.slot(r, c)));
    }
  }

  // Stage 3: back to the computational basis; ancillas now hold row parities.
  auto& s3 = out.stages[2];
  for (int r = 0; r + 1 < ny; r++) {
    s3.push_back(Gate::cnot(L.slot(r + 1, 0), L.slot(r, 0)));
    for (int c = 0; c < nx; c++) {
      s3.push_back(Gate::cnot(L.slot(r + 1, c + 1), L.slot(r, c + 1)));
    }
  }

  // Stage 4: ancillas sweep right, shedding each column, with the
  // right-closed CZ pair on even rows.
  auto& s4 = out.stages[3];
  for (int c = 0; c < nx; c++) {
    for (int r = 0; r < ny; r++) {
      s4.push_back(Gate::cnot(L.slot(r, c + 1), L.slot(r, c)));
    }
    for (int r = 0; r < ny; r += 2) {
      s4.push_back(Gate::cz(L.slot(r, c + 1), L.slot(r, c)));
      s4.push_back(Gate::cz(L.slot(r, c + 1), L.slot(r + 1, c)));
    }
    for (int r = 0; r < ny; r++) {
      s4.push_back(Gate::swap(L.slot(r, c), L.slot(r, c + 1)));
    }
  }
  return out;
}

Circuit build_gamma(const Lattice2D& lattice, bool pad_odd_rows) {
  GammaStages st = build_gamma_stages(lattice, pad_odd_rows);
  std::vector<Gate> all;
  for (const auto& s : st.stages) {
    all.insert(all.end(), s.begin(), s.end());
  }
  return schedule(all, lattice.n_sites(), st.layout.n_qubits - lattice.n_sites());
}

GammaOracle::GammaOracle(const Lattice2D& lattice) : lattice_(lattice) {
  GammaStages st = build_gamma_stages(lattice, true);
  n_qubits_ = st.layout.n_qubits;
  for (const auto& s : st.stages) {
    gates_.insert(gates_.end(), s.begin(), s.end());
  }
}

uint64_t GammaOracle::minus_mask(const std::vector<uint64_t>& words) const {
  const int n = lattice_.n_sites();
  if (static_cast<int>(words.size()) != n) {
    throw Error("expected " + std::to_string(n) + " words, got " + std::to_string(words.size()));
  }
  std::vector<uint64_t> q(n_qubits_, 0);
  std::copy(words.begin(), words.end(), q.begin());
  uint64_t minus = 0;
  for (const Gate& g : gates_) {
    switch (g.kind) {
      case GateKind::CNOT:
        q[g.q1] ^= q[g.q0];
        break;
      case GateKind::SWAP:
        std::swap(q[g.q0], q[g.q1]);
        break;
      case GateKind::CZ:
        minus ^= q[g.q0] & q[g.q1];
        break;
      default:
        throw Error("unexpected gate in gamma circuit");
    }
  }
  for (int i = 0; i < n_qubits_; i++) {
    if (q[i] != (i < n ? words[i] : 0)) {
      throw Error("gamma circuit did not return qubit " + std::to_string(i) + " to its input");
    }
  }
  return minus;
}

namespace {

std::vector<uint64_t> pack(const std::vector<Bitstring>& strings, size_t first, size_t count, int n) {
  std::vector<uint64_t> words(n, 0);
  for (size_t i = 0; i < count; i++) {
    const Bitstring& s = strings[first + i];
    if (static_cast<int>(s.size()) != n) {
      throw Error("bit string has " + std::to_string(s.size()) + " bits, lattice has " + std::to_string(n));
    }
    for (int q = 0; q < n; q++) {
      words[q] |= static_cast<uint64_t>(s[q] & 1) << i;
    }
  }
  return words;
}

}  // namespace

int GammaOracle::phase(const Bitstring& s) const { return phases({s})[0]; }

std::vector<int> GammaOracle::phases(const std::vector<Bitstring>& strings) const {
  const int n = lattice_.n_sites();
  std::vector<int> out(strings.size());
  int batches = static_cast<int>((strings.size() + 63) / 64);
  parallel_tasks(batches, [&](int b) {
    size_t first = static_cast<size_t>(b) * 64;
    size_t count = std::min<size_t>(64, strings.size() - first);
    uint64_t m = minus_mask(pack(strings, first, count, n));
    for (size_t i = 0; i < count; i++) {
      out[first + i] = (m >> i) & 1 ? -1 : 1;
    }
  });
  return out;
}

int gamma_phase(const Lattice2D& lattice, const Bitstring& s) { return GammaOracle(lattice).phase(s); }

bool verify_parity_relation(const GammaOracle& oracle, const ParityEdge& edge, const Bitstring& s) {
  const int n = oracle.lattice().n_sites();
  if (static_cast<int>(s.size()) != n || edge.j < 0 || edge.k >= n || edge.j >= edge.k) {
    throw Error("bad edge or string size for parity check");
  }
  if ((s[edge.j] & 1) + (s[edge.k] & 1) != 1) {
    throw Error("parity relation needs s_j + s_k = 1");
  }
  Bitstring t = s;
  t[edge.j] ^= 1;
  t[edge.k] ^= 1;
  std::vector<int> g = oracle.phases({s, t});
  int string_parity = 0;
  for (int l = edge.j + 1; l < edge.k; l++) {
    string_parity ^= s[l] & 1;
  }
  return g[0] * g[1] == (string_parity ? -1 : 1);
}

bool verify_parity_relation(const Lattice2D& lattice, const ParityEdge& edge, const Bitstring& s) {
  return verify_parity_relation(GammaOracle(lattice), edge, s);
}

ParityCheckReport check_random_parity(const Lattice2D& lattice, int64_t samples, uint64_t seed) {
  ParityCheckReport report;
  report.samples = samples;
  std::vector<ParityEdge> edges = lattice.vertical_edges();
  if (edges.empty() || samples <= 0) {
    return report;
  }
  GammaOracle oracle(lattice);
  const int n = lattice.n_sites();
  int batches = static_cast<int>((samples + 63) / 64);
  std::atomic<int64_t> failures{0};
  parallel_tasks(batches, [&](int b) {
    std::seed_seq sq{seed, static_cast<uint64_t>(b)};
    std::mt19937_64 rng(sq);
    int lanes = static_cast<int>(std::min<int64_t>(64, samples - int64_t{b} * 64));
    std::vector<uint64_t> words(n);
    for (auto& w : words) w = rng();
    std::uniform_int_distribution<size_t> pick(0, edges.size() - 1);
    std::vector<ParityEdge> chosen(lanes);
    for (int i = 0; i < lanes; i++) {
      const ParityEdge& e = chosen[i] = edges[pick(rng)];
      uint64_t bit = uint64_t{1} << i;
      // Force s_j != s_k.
      words[e.k] = (words[e.k] & ~bit) | (~words[e.j] & bit);
    }
    std::vector<uint64_t> flipped = words;
    uint64_t expect = 0;
    for (int i = 0; i < lanes; i++) {
      const ParityEdge& e = chosen[i];
      uint64_t bit = uint64_t{1} << i;
      flipped[e.j] ^= bit;
      flipped[e.k] ^= bit;
      for (int l = e.j + 1; l < e.k; l++) {
        expect ^= words[l] & bit;
      }
    }
    uint64_t got = oracle.minus_mask(words) ^ oracle.minus_mask(flipped);
    uint64_t mask = lanes == 64 ? ~uint64_t{0} : (uint64_t{1} << lanes) - 1;
    failures += std::popcount((got ^ expect) & mask);
  });
  report.failures = failures;
  return report;
}

}  // namespace fermiforge
