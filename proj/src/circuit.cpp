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

#include "fermiforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fermiforge {

namespace {

struct KindInfo {
  GateKind kind;
  const char* name;
  int arity;
  int n_params;
};

constexpr std::array<KindInfo, 14> kKinds{{
    {GateKind::GIVENS, "GIVENS", 2, 2},
    {GateKind::BARE_GIVENS, "BARE_GIVENS", 2, 2},
    {GateKind::PARTICLE_HOLE_X, "PARTICLE_HOLE_X", 1, 0},
    {GateKind::CZ, "CZ", 2, 0},
    {GateKind::CNOT, "CNOT", 2, 0},
    {GateKind::SWAP, "SWAP", 2, 0},
    {GateKind::FSWAP, "FSWAP", 2, 0},
    {GateKind::X, "X", 1, 0},
    {GateKind::PHASE, "PHASE", 1, 1},
    {GateKind::CPHASE, "CPHASE", 2, 1},
    {GateKind::RZ, "RZ", 1, 1},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::BOGOLIUBOV, "BOGOLIUBOV", 2, 1},
    {GateKind::ISWAP_EVOLVE, "ISWAP_EVOLVE", 2, 1},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) {
      return k;
    }
  }
  throw Error("unknown gate kind");
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (name == k.name) {
      return k.kind;
    }
  }
  throw Error("unknown gate kind '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) { return info(kind).arity; }
int gate_param_count(GateKind kind) { return info(kind).n_params; }

std::vector<double> Gate::params() const {
  switch (gate_param_count(kind)) {
    case 0:
      return {};
    case 1:
      return {p0};
    default:
      return {p0, p1};
  }
}

ComplexMatrix gate_matrix(const Gate& g) {
  const Complex I(0, 1);
  if (g.arity() == 1) {
    ComplexMatrix m(2, 2);
    switch (g.kind) {
      case GateKind::X:
      case GateKind::PARTICLE_HOLE_X:
        m << 0, 1, 1, 0;
        break;
      case GateKind::PHASE:
        m << 1, 0, 0, std::polar(1.0, g.p0);
        break;
      case GateKind::RZ:
        m << std::polar(1.0, -g.p0 / 2), 0, 0, std::polar(1.0, g.p0 / 2);
        break;
      case GateKind::RY: {
        double c = std::cos(g.p0 / 2);
        double s = std::sin(g.p0 / 2);
        m << c, -s, s, c;
        break;
      }
      default:
        throw Error("gate_matrix: bad single-qubit kind");
    }
    return m;
  }
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  switch (g.kind) {
    case GateKind::GIVENS:
    case GateKind::BARE_GIVENS: {
      Eigen::Matrix2cd gm = givens_matrix(g.p0, g.p1);
      // Columns are inputs: |q0> is local index 1, |q1> is local index 2.
      m(1, 1) = gm(0, 0);
      m(2, 1) = gm(0, 1);
      m(1, 2) = gm(1, 0);
      m(2, 2) = gm(1, 1);
      m(3, 3) = std::polar(1.0, g.p1);
      break;
    }
    case GateKind::CZ:
      m(3, 3) = -1;
      break;
    case GateKind::CNOT:
      m(1, 1) = 0;
      m(3, 3) = 0;
      m(3, 1) = 1;
      m(1, 3) = 1;
      break;
    case GateKind::SWAP:
    case GateKind::FSWAP:
      m(1, 1) = 0;
      m(2, 2) = 0;
      m(1, 2) = 1;
      m(2, 1) = 1;
      if (g.kind == GateKind::FSWAP) {
        m(3, 3) = -1;
      }
      break;
    case GateKind::CPHASE:
      m(3, 3) = std::polar(1.0, g.p0);
      break;
    case GateKind::BOGOLIUBOV: {
      double c = std::cos(g.p0);
      double s = std::sin(g.p0);
      m(0, 0) = c;
      m(3, 0) = s;
      m(0, 3) = -s;
      m(3, 3) = c;
      break;
    }
    case GateKind::ISWAP_EVOLVE: {
      double c = std::cos(g.p0);
      double s = std::sin(g.p0);
      m(1, 1) = c;
      m(2, 2) = c;
      m(1, 2) = I * s;
      m(2, 1) = I * s;
      break;
    }
    default:
      throw Error("gate_matrix: bad two-qubit kind");
  }
  return m;
}

std::vector<Gate> inverse_gates(const Gate& g) {
  switch (g.kind) {
    case GateKind::GIVENS:
    case GateKind::BARE_GIVENS: {
      // G(t, p)^-1 = diag(1, e^{-ip}) R(-t): the phase acts first.
      std::vector<Gate> out;
      if (g.p1 != 0.0) {
        out.push_back(Gate::phase(g.q1, -g.p1));
      }
      out.push_back(Gate{g.kind, g.q0, g.q1, -g.p0, 0.0});
      return out;
    }
    case GateKind::PHASE:
    case GateKind::CPHASE:
    case GateKind::RZ:
    case GateKind::RY:
    case GateKind::BOGOLIUBOV:
    case GateKind::ISWAP_EVOLVE: {
      Gate inv = g;
      inv.p0 = -g.p0;
      return {inv};
    }
    default:
      return {g};
  }
}

void validate_gate(const Gate& g, int n_qubits) {
  int a = g.arity();
  auto bad = [&](const std::string& why) {
    std::ostringstream os;
    os << "invalid " << gate_kind_name(g.kind) << " gate: " << why;
    throw Error(os.str());
  };
  if (g.q0 < 0 || g.q0 >= n_qubits) {
    bad("qubit index out of range");
  }
  if (a == 2) {
    if (g.q1 < 0 || g.q1 >= n_qubits) {
      bad("qubit index out of range");
    }
    if (g.q0 == g.q1) {
      bad("repeated qubit");
    }
  } else if (g.q1 != -1) {
    bad("single-qubit gate given two qubits");
  }
  if (!std::isfinite(g.p0) || !std::isfinite(g.p1)) {
    bad("non-finite parameter");
  }
}

std::vector<Gate> Circuit::gates() const {
  std::vector<Gate> out;
  for (const auto& layer : layers) {
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

void Circuit::validate() const {
  if (n_system < 0 || n_ancilla < 0) {
    throw Error("circuit: negative register size");
  }
  std::vector<int> seen(n_qubits(), -1);
  for (size_t l = 0; l < layers.size(); l++) {
    for (const Gate& g : layers[l]) {
      validate_gate(g, n_qubits());
      for (int q : {g.q0, g.q1}) {
        if (q < 0) {
          continue;
        }
        if (seen[q] == static_cast<int>(l)) {
          std::ostringstream os;
          os << "circuit: layer " << l << " uses qubit " << q << " twice";
          throw Error(os.str());
        }
        seen[q] = static_cast<int>(l);
      }
    }
  }
}

Circuit schedule(const std::vector<Gate>& gates, int n_system, int n_ancilla, Complex global_phase) {
  Circuit c;
  c.n_system = n_system;
  c.n_ancilla = n_ancilla;
  c.global_phase = global_phase;
  std::vector<int> next_free(c.n_qubits(), 0);
  for (const Gate& g : gates) {
    validate_gate(g, c.n_qubits());
    int layer = next_free[g.q0];
    if (g.q1 >= 0) {
      layer = std::max(layer, next_free[g.q1]);
    }
    if (layer >= static_cast<int>(c.layers.size())) {
      c.layers.resize(layer + 1);
    }
    c.layers[layer].push_back(g);
    next_free[g.q0] = layer + 1;
    if (g.q1 >= 0) {
      next_free[g.q1] = layer + 1;
    }
  }
  return c;
}

Circuit concat(const Circuit& a, const Circuit& b) {
  std::vector<Gate> gates = a.gates();
  std::vector<Gate> tail = b.gates();
  gates.insert(gates.end(), tail.begin(), tail.end());
  int n_sys = std::max(a.n_system, b.n_system);
  int n_anc = std::max(a.n_qubits(), b.n_qubits()) - n_sys;
  return schedule(gates, n_sys, n_anc, a.global_phase * b.global_phase);
}

Circuit inverse(const Circuit& c) {
  std::vector<Gate> fwd = c.gates();
  std::vector<Gate> out;
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
    auto inv = inverse_gates(*it);
    out.insert(out.end(), inv.begin(), inv.end());
  }
  return schedule(out, c.n_system, c.n_ancilla, std::conj(c.global_phase));
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  m.depth = c.depth();
  for (const auto& layer : c.layers) {
    for (const Gate& g : layer) {
      m.total_count++;
      if (g.arity() == 2) {
        m.two_qubit_count++;
      }
      m.by_kind[std::string(gate_kind_name(g.kind))]++;
    }
  }
  return m;
}

std::vector<Gate> lower_givens_gate(const Gate& g) {
  if (g.kind != GateKind::GIVENS && g.kind != GateKind::BARE_GIVENS) {
    return {g};
  }
  int j = g.q0;
  int k = g.q1;
  std::vector<Gate> out = {
      Gate::cnot(k, j), Gate::ry(k, -g.p0), Gate::cnot(j, k), Gate::ry(k, g.p0),
      Gate::cnot(j, k), Gate::cnot(k, j),
  };
  if (g.p1 != 0.0) {
    out.push_back(Gate::phase(k, g.p1));
  }
  return out;
}

Circuit lower_givens(const Circuit& c) {
  std::vector<Gate> out;
  for (const Gate& g : c.gates()) {
    auto low = lower_givens_gate(g);
    out.insert(out.end(), low.begin(), low.end());
  }
  return schedule(out, c.n_system, c.n_ancilla, c.global_phase);
}

Circuit lower_fswap(const Circuit& c) {
  std::vector<Gate> out;
  Complex phase = c.global_phase;
  for (const Gate& g : c.gates()) {
    if (g.kind != GateKind::FSWAP) {
      out.push_back(g);
      continue;
    }
    out.push_back(Gate::iswap_evolve(g.q0, g.q1, std::numbers::pi / 2));
    out.push_back(Gate::rz(g.q0, -std::numbers::pi / 2));
    out.push_back(Gate::rz(g.q1, -std::numbers::pi / 2));
    phase *= Complex(0, -1);
  }
  return schedule(out, c.n_system, c.n_ancilla, phase);
}

}  // namespace fermiforge
