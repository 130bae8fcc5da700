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

#include "fermiforge/io.hpp"

namespace fermiforge {

Json circuit_to_json(const Circuit& c) {
  Json layers = Json::array();
  for (const auto& layer : c.layers) {
    Json jl = Json::array();
    for (const Gate& g : layer) {
      Json qubits = Json::array({g.q0});
      if (g.arity() == 2) {
        qubits.push_back(g.q1);
      }
      jl.push_back({{"kind", std::string(gate_kind_name(g.kind))}, {"qubits", qubits}, {"params", g.params()}});
    }
    layers.push_back(jl);
  }
  return Json{{"n_system", c.n_system},
              {"n_ancilla", c.n_ancilla},
              {"global_phase", {c.global_phase.real(), c.global_phase.imag()}},
              {"layers", layers}};
}

Circuit circuit_from_json(const Json& j) {
  if (!j.is_object()) {
    throw Error("circuit JSON: expected an object");
  }
  Circuit c;
  c.n_system = j.at("n_system").get<int>();
  c.n_ancilla = j.value("n_ancilla", 0);
  if (j.contains("global_phase")) {
    const Json& p = j.at("global_phase");
    if (!p.is_array() || p.size() != 2) {
      throw Error("circuit JSON: global_phase must be [re, im]");
    }
    c.global_phase = Complex(p[0].get<double>(), p[1].get<double>());
  }
  for (const Json& jl : j.at("layers")) {
    std::vector<Gate> layer;
    for (const Json& jg : jl) {
      Gate g;
      g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
      const Json& qs = jg.at("qubits");
      if (!qs.is_array() || static_cast<int>(qs.size()) != g.arity()) {
        throw Error("circuit JSON: wrong qubit count for " + jg.at("kind").get<std::string>());
      }
      g.q0 = qs[0].get<int>();
      g.q1 = g.arity() == 2 ? qs[1].get<int>() : -1;
      Json ps = jg.value("params", Json::array());
      if (!ps.is_array() || static_cast<int>(ps.size()) != gate_param_count(g.kind)) {
        throw Error("circuit JSON: wrong parameter count for " + jg.at("kind").get<std::string>());
      }
      if (ps.size() > 0) g.p0 = ps[0].get<double>();
      if (ps.size() > 1) g.p1 = ps[1].get<double>();
      layer.push_back(g);
    }
    c.layers.push_back(layer);
  }
  c.validate();
  return c;
}

std::string serialize(const Circuit& c) { return circuit_to_json(c).dump(); }

Circuit parse_circuit(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(std::string("circuit JSON: ") + e.what());
  }
  try {
    return circuit_from_json(j);
  } catch (const Json::exception& e) {
    throw Error(std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace fermiforge
