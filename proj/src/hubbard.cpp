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

#include "fermiforge/hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fermiforge/gamma.hpp"
#include "fermiforge/simulator.hpp"

namespace fermiforge {

namespace {

void scale_into(FermionOperator& out, const FermionOperator& op, Complex w) {
  for (FermionTerm t : op) {
    t.coefficient *= w;
    out.push_back(std::move(t));
  }
}

void add_hop(FermionOperator& op, int a, int b, double t) {
  op.push_back(hopping_term(a, b, -t));
  op.push_back(hopping_term(b, a, -t));
}

Bond make_bond(int a, int b, bool vertical) { return {std::min(a, b), std::max(a, b), vertical}; }

}  // namespace

std::vector<Bond> lattice_bonds(const Lattice2D& lat, bool periodic) {
  std::vector<Bond> out;
  const int nx = lat.n_x();
  const int ny = lat.n_y();
  for (int r = 0; r < ny; r++) {
    for (int c = 0; c < nx; c++) {
      if (c + 1 < nx) {
        out.push_back(make_bond(lat.index(r, c), lat.index(r, c + 1), false));
      } else if (periodic && nx > 1) {
        out.push_back(make_bond(lat.index(r, c), lat.index(r, 0), false));
      }
    }
  }
  for (int r = 0; r < ny; r++) {
    for (int c = 0; c < nx; c++) {
      if (r + 1 < ny) {
        out.push_back(make_bond(lat.index(r, c), lat.index(r + 1, c), true));
      } else if (periodic && ny > 1) {
        out.push_back(make_bond(lat.index(r, c), lat.index(0, c), true));
      }
    }
  }
  return out;
}

std::vector<Bond> diagonal_bonds(const Lattice2D& lat, bool periodic) {
  std::vector<Bond> out;
  const int nx = lat.n_x();
  const int ny = lat.n_y();
  for (int r = 0; r < ny; r++) {
    if (r + 1 >= ny && !(periodic && ny > 1)) {
      continue;
    }
    int r2 = (r + 1) % ny;
    for (int c = 0; c < nx; c++) {
      for (int dc : {1, -1}) {
        int c2 = c + dc;
        if (c2 < 0 || c2 >= nx) {
          if (!periodic || nx == 1) continue;
          c2 = (c2 + nx) % nx;
        }
        out.push_back(make_bond(lat.index(r, c), lat.index(r2, c2), false));
      }
    }
  }
  return out;
}

double HubbardSpec::hopping(const Bond& b) const {
  auto it = t_bonds.find({b.a, b.b});
  return it == t_bonds.end() ? t : it->second;
}

double HubbardSpec::eps_at(int site) const { return eps.empty() ? 0.0 : eps.at(site); }
double HubbardSpec::h_at(int site) const { return h.empty() ? 0.0 : h.at(site); }

void HubbardSpec::validate() const {
  const int n = lattice.n_sites();
  if (!eps.empty() && static_cast<int>(eps.size()) != n) {
    throw Error("eps needs one entry per site");
  }
  if (!h.empty() && static_cast<int>(h.size()) != n) {
    throw Error("h needs one entry per site");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(t) || !finite(u) || !finite(mu) || !std::all_of(eps.begin(), eps.end(), finite) ||
      !std::all_of(h.begin(), h.end(), finite)) {
    throw Error("Hubbard parameters must be finite");
  }
  std::vector<Bond> bonds = lattice_bonds(lattice, periodic);
  for (const auto& [key, value] : t_bonds) {
    bool found = std::any_of(bonds.begin(), bonds.end(), [&](const Bond& b) {
      return b.a == key.first && b.b == key.second;
    });
    if (!found || !finite(value)) {
      throw Error("hopping override on (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                  ") is not a finite nearest-neighbour bond");
    }
  }
}

void AdiabaticSchedule::validate() const {
  if (!(total_time > 0) || steps < 1 || !std::isfinite(zeta) || !std::isfinite(eta)) {
    throw Error("schedule needs T > 0, steps >= 1 and finite zeta, eta");
  }
}

int SpinLayout::mode(int site, int spin) const {
  const int n = lattice.n_sites();
  if (site < 0 || site >= n || (spin != kUp && spin != kDown)) {
    throw Error("bad (site, spin) for layout");
  }
  Site s = lattice.site(site);
  switch (kind) {
    case LayoutKind::kInterleaved:
      return mode_lattice().index(s.row, 2 * s.col + spin);
    case LayoutKind::kLadder:
      return spin * n + s.row * lattice.n_x() + s.col;
    case LayoutKind::kBlocked:
      return spin * n + site;
  }
  return 0;
}

FermionOperator hopping_operator(const HubbardSpec& spec, const SpinLayout& layout, bool vertical_only,
                                 bool horizontal_only) {
  FermionOperator op;
  for (const Bond& b : lattice_bonds(spec.lattice, spec.periodic)) {
    if ((vertical_only && !b.vertical) || (horizontal_only && b.vertical)) continue;
    for (int s : {kUp, kDown}) {
      add_hop(op, layout.mode(b.a, s), layout.mode(b.b, s), spec.hopping(b));
    }
  }
  return op;
}

FermionOperator onsite_operator(const HubbardSpec& spec, const SpinLayout& layout) {
  FermionOperator op;
  for (int j = 0; j < spec.lattice.n_sites(); j++) {
    int up = layout.mode(j, kUp);
    int dn = layout.mode(j, kDown);
    if (spec.u != 0) {
      op.push_back(number_term(up, spec.u) * number_term(dn, 1.0));
    }
    double base = spec.eps_at(j) - spec.mu;
    double field = spec.h_at(j);
    if (base - field != 0) op.push_back(number_term(up, base - field));
    if (base + field != 0) op.push_back(number_term(dn, base + field));
  }
  return op;
}

FermionOperator hubbard_operator(const HubbardSpec& spec, const SpinLayout& layout) {
  FermionOperator op = hopping_operator(spec, layout);
  FermionOperator on = onsite_operator(spec, layout);
  op.insert(op.end(), on.begin(), on.end());
  return op;
}

FermionOperator singlet_pairing(const std::vector<std::pair<Bond, Complex>>& weighted, const SpinLayout& layout) {
  FermionOperator p;
  for (const auto& [b, w] : weighted) {
    if (w == Complex(0)) continue;
    p.push_back(creation(layout.mode(b.a, kUp), -w) * creation(layout.mode(b.b, kDown)));
    p.push_back(creation(layout.mode(b.a, kDown), w) * creation(layout.mode(b.b, kUp)));
  }
  FermionOperator out = p;
  FermionOperator pd = adjoint(p);
  out.insert(out.end(), pd.begin(), pd.end());
  return out;
}

FermionOperator dwave_operator(const DWaveSpec& spec, const SpinLayout& layout) {
  FermionOperator op;
  std::vector<std::pair<Bond, Complex>> pairs;
  for (const Bond& b : lattice_bonds(spec.lattice, spec.periodic)) {
    for (int s : {kUp, kDown}) {
      add_hop(op, layout.mode(b.a, s), layout.mode(b.b, s), spec.t);
    }
    pairs.emplace_back(b, spec.pairing(b));
  }
  for (int j = 0; j < spec.lattice.n_sites(); j++) {
    for (int s : {kUp, kDown}) {
      if (spec.mu != 0) op.push_back(number_term(layout.mode(j, s), -spec.mu));
    }
  }
  FermionOperator pair = singlet_pairing(pairs, layout);
  op.insert(op.end(), pair.begin(), pair.end());
  return op;
}

FermionOperator adiabatic_operator(const HubbardSpec& fh, const DWaveSpec& dw, const AdiabaticSchedule& sched,
                                   double s) {
  sched.validate();
  if (!(s >= 0 && s <= 1)) {
    throw Error("s must lie in [0, 1]");
  }
  if (!(fh.lattice == dw.lattice) || fh.periodic != dw.periodic) {
    throw Error("Hubbard and d-wave specs must share the lattice");
  }
  SpinLayout layout{LayoutKind::kInterleaved, fh.lattice};
  FermionOperator op;
  if (s != 1) scale_into(op, dwave_operator(dw, layout), 1 - s);
  if (s != 0) scale_into(op, hubbard_operator(fh, layout), s);
  std::vector<std::pair<Bond, Complex>> zeta;
  for (const Bond& b : lattice_bonds(dw.lattice, dw.periodic)) {
    zeta.emplace_back(b, sched.zeta * dw.pairing(b));
  }
  std::vector<std::pair<Bond, Complex>> eta;
  for (const Bond& b : diagonal_bonds(dw.lattice, dw.periodic)) {
    eta.emplace_back(b, Complex(0, sched.eta * dw.delta / 2));
  }
  for (const auto* w : {&zeta, &eta}) {
    FermionOperator p = singlet_pairing(*w, layout);
    op.insert(op.end(), p.begin(), p.end());
  }
  return op;
}

ComplexMatrix build_adiabatic_hamiltonian(const HubbardSpec& fh, const DWaveSpec& dw,
                                          const AdiabaticSchedule& sched, double s) {
  return dense_hamiltonian(adiabatic_operator(fh, dw, sched, s), 2 * fh.lattice.n_sites());
}

std::vector<Gate> hop_gates(int a, int b, double t, double dt, bool bare) {
  double theta = -t * dt;
  if (theta == 0) {
    return {};
  }
  if (a > b) std::swap(a, b);
  const double half_pi = std::numbers::pi / 2;
  Gate g = bare ? Gate::bare_givens(a, b, theta, half_pi) : Gate::givens(a, b, theta, half_pi);
  return {Gate::phase(b, -half_pi), g};
}

int gamma_ancillas(const Lattice2D& modes) {
  return GammaLayout(modes).n_qubits - modes.n_sites();
}

int pair_ancillas(const Lattice2D& modes) { return modes.n_y() - 1; }

namespace {

void append(std::vector<Gate>& out, const std::vector<Gate>& more) { out.insert(out.end(), more.begin(), more.end()); }

bool any_nonzero(const std::vector<double>& t, double dt) {
  return dt != 0 && std::any_of(t.begin(), t.end(), [](double x) { return x != 0; });
}

void check_edges(const Lattice2D& modes, const std::vector<double>& t_edges) {
  if (t_edges.size() != modes.vertical_edges().size()) {
    throw Error("need one hopping amplitude per vertical edge");
  }
}

}  // namespace

std::vector<Gate> vertical_hops_gamma(const Lattice2D& modes, const std::vector<double>& t_edges, double dt) {
  check_edges(modes, t_edges);
  if (!any_nonzero(t_edges, dt)) {
    return {};
  }
  GammaStages st = build_gamma_stages(modes, true);
  std::vector<Gate> gamma;
  for (const auto& s : st.stages) append(gamma, s);
  std::vector<Gate> out = gamma;
  auto edges = modes.vertical_edges();
  for (int parity : {0, 1}) {
    for (size_t e = 0; e < edges.size(); e++) {
      if (modes.site(edges[e].j).row % 2 == parity) {
        append(out, hop_gates(edges[e].j, edges[e].k, t_edges[e], dt, true));
      }
    }
  }
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) {
    out.push_back(*it);
  }
  return out;
}

std::vector<Gate> vertical_hops_ancilla(const Lattice2D& modes, const std::vector<double>& t_edges, double dt,
                                        int first_ancilla) {
  check_edges(modes, t_edges);
  if (!any_nonzero(t_edges, dt)) {
    return {};
  }
  const int nx = modes.n_x();
  const int ny = modes.n_y();
  auto edge_t = [&](int r, int c) { return t_edges[static_cast<size_t>(r) * nx + c]; };
  std::vector<Gate> out;
  // Right-closed pairs start from |0> and absorb each column after its hop;
  // left-closed pairs start from the two-row parity and shed each column
  // before its hop. Both sweep from the right edge.
  for (int parity : {0, 1}) {
    std::vector<Gate> load;
    for (int r = parity; r + 1 < ny; r += 2) {
      int anc = first_ancilla + r;
      for (int c = 0; c < nx; c++) {
        load.push_back(Gate::cnot(modes.index(r, c), anc));
        load.push_back(Gate::cnot(modes.index(r + 1, c), anc));
      }
    }
    if (parity == 1) append(out, load);
    for (int c = nx - 1; c >= 0; c--) {
      for (int r = parity; r + 1 < ny; r += 2) {
        int anc = first_ancilla + r;
        int j = modes.index(r, c);
        int k = modes.index(r + 1, c);
        std::vector<Gate> absorb{Gate::cnot(j, anc), Gate::cnot(k, anc)};
        std::vector<Gate> hop = hop_gates(j, k, edge_t(r, c), dt, true);
        if (parity == 1) append(out, absorb);
        if (!hop.empty()) {
          out.push_back(Gate::cz(anc, j));
          append(out, hop);
          out.push_back(Gate::cz(anc, j));
        }
        if (parity == 0) append(out, absorb);
      }
    }
    if (parity == 0) append(out, load);
  }
  return out;
}

namespace {

std::vector<double> mode_lattice_edge_t(const HubbardSpec& spec, const Lattice2D& ml) {
  std::vector<double> out;
  for (const auto& e : ml.vertical_edges()) {
    Site a = ml.site(e.j);
    Site b = ml.site(e.k);
    out.push_back(spec.hopping(make_bond(spec.lattice.index(a.row, a.col / 2),
                                         spec.lattice.index(b.row, b.col / 2), true)));
  }
  return out;
}

// Horizontal bond groups shared by every layout: in group `parity` site c
// with c % 2 == parity hops down-spin to its left and up-spin to its right.
std::vector<std::pair<Bond, int>> horizontal_group(const HubbardSpec& spec, int parity) {
  std::vector<std::pair<Bond, int>> out;
  const Lattice2D& lat = spec.lattice;
  for (int r = 0; r < lat.n_y(); r++) {
    for (int c = parity; c < lat.n_x(); c += 2) {
      if (c >= 1) out.emplace_back(make_bond(lat.index(r, c - 1), lat.index(r, c), false), kDown);
      if (c + 1 < lat.n_x()) out.emplace_back(make_bond(lat.index(r, c), lat.index(r, c + 1), false), kUp);
    }
  }
  return out;
}

FermionOperator group_operator(const HubbardSpec& spec, const SpinLayout& layout,
                               const std::vector<std::pair<Bond, int>>& group) {
  FermionOperator op;
  for (const auto& [b, s] : group) {
    add_hop(op, layout.mode(b.a, s), layout.mode(b.b, s), spec.hopping(b));
  }
  return op;
}

// Vertical bonds between rows (r, r+1) with r % 2 == parity.
FermionOperator vertical_operator(const HubbardSpec& spec, const SpinLayout& layout, int parity) {
  FermionOperator op;
  const Lattice2D& lat = spec.lattice;
  for (int r = parity; r + 1 < lat.n_y(); r += 2) {
    for (int c = 0; c < lat.n_x(); c++) {
      Bond b = make_bond(lat.index(r, c), lat.index(r + 1, c), true);
      for (int s : {kUp, kDown}) add_hop(op, layout.mode(b.a, s), layout.mode(b.b, s), spec.hopping(b));
    }
  }
  return op;
}

std::vector<Gate> onsite_gates(const HubbardSpec& spec, const SpinLayout& layout, double dt,
                               const std::vector<int>& qubit_of_mode) {
  std::vector<Gate> out;
  for (int j = 0; j < spec.lattice.n_sites(); j++) {
    int up = qubit_of_mode[layout.mode(j, kUp)];
    int dn = qubit_of_mode[layout.mode(j, kDown)];
    if (spec.u * dt != 0) out.push_back(Gate::cphase(up, dn, -dt * spec.u));
    double base = spec.eps_at(j) - spec.mu;
    double field = spec.h_at(j);
    if ((base - field) * dt != 0) out.push_back(Gate::phase(up, -dt * (base - field)));
    if ((base + field) * dt != 0) out.push_back(Gate::phase(dn, -dt * (base + field)));
  }
  return out;
}

std::vector<int> identity_order(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; i++) v[i] = i;
  return v;
}

void require_open(const HubbardSpec& spec) {
  spec.validate();
  if (spec.periodic) {
    throw Error("Trotter compilation supports open boundaries only");
  }
}

void finish(TrotterStep& step, int n_system, int n_ancilla) {
  std::vector<Gate> all;
  for (const Circuit& p : step.parts) append(all, p.gates());
  step.circuit = schedule(all, n_system, n_ancilla);
  if (step.final_order.empty()) step.final_order = identity_order(n_system);
}

}  // namespace

TrotterStep synth_trotter_step_2d(const HubbardSpec& spec, double dt) {
  require_open(spec);
  TrotterStep step;
  step.layout = SpinLayout{LayoutKind::kInterleaved, spec.lattice};
  const SpinLayout& L = step.layout;
  const Lattice2D ml = L.mode_lattice();
  const int n_sys = L.n_modes();
  const int n_anc = gamma_ancillas(ml);
  const Lattice2D& lat = spec.lattice;

  std::vector<Gate> horizontal;
  std::vector<FermionOperator> hfrag;
  for (int parity : {1, 0}) {
    auto group = horizontal_group(spec, parity);
    hfrag.push_back(group_operator(spec, L, group));
    bool idle = std::all_of(group.begin(), group.end(), [&](const auto& g) { return spec.hopping(g.first) * dt == 0; });
    if (idle) continue;
    std::vector<int> at(n_sys);
    for (int m = 0; m < n_sys; m++) at[m] = m;
    std::vector<Gate> shuffle;
    for (int r = 0; r < lat.n_y(); r++) {
      for (int c = parity; c < lat.n_x(); c += 2) {
        int up = L.mode(lat.index(r, c), kUp);
        int dn = L.mode(lat.index(r, c), kDown);
        shuffle.push_back(Gate::fswap(std::min(up, dn), std::max(up, dn)));
        std::swap(at[up], at[dn]);
      }
    }
    append(horizontal, shuffle);
    for (const auto& [b, s] : group) {
      int qa = at[L.mode(b.a, s)];
      int qb = at[L.mode(b.b, s)];
      if (std::abs(qa - qb) != 1) {
        throw Error("internal: shuffled hop is not adjacent");
      }
      append(horizontal, hop_gates(qa, qb, spec.hopping(b), dt));
    }
    append(horizontal, shuffle);
  }

  std::vector<Gate> vertical = vertical_hops_gamma(ml, mode_lattice_edge_t(spec, ml), dt);
  std::vector<Gate> onsite = onsite_gates(spec, L, dt, identity_order(n_sys));

  step.part_names = {"horizontal", "vertical", "onsite"};
  step.parts = {schedule(horizontal, n_sys, n_anc), schedule(vertical, n_sys, n_anc),
                schedule(onsite, n_sys, n_anc)};
  step.fragments = {hfrag,
                    {vertical_operator(spec, L, 0), vertical_operator(spec, L, 1)},
                    {onsite_operator(spec, L)}};
  finish(step, n_sys, n_anc);
  return step;
}

TrotterStep synth_vertical_hopping_ancilla(const HubbardSpec& spec, double dt) {
  require_open(spec);
  TrotterStep step;
  step.layout = SpinLayout{LayoutKind::kInterleaved, spec.lattice};
  const Lattice2D ml = step.layout.mode_lattice();
  const int n_sys = step.layout.n_modes();
  const int n_anc = pair_ancillas(ml);
  std::vector<Gate> g = vertical_hops_ancilla(ml, mode_lattice_edge_t(spec, ml), dt, n_sys);
  step.part_names = {"vertical"};
  step.parts = {schedule(g, n_sys, n_anc)};
  step.fragments = {{vertical_operator(spec, step.layout, 0), vertical_operator(spec, step.layout, 1)}};
  finish(step, n_sys, n_anc);
  return step;
}

TrotterStep synth_trotter_step_ladder(const HubbardSpec& spec, double dt, LadderScheme scheme) {
  require_open(spec);
  TrotterStep step;
  step.layout = SpinLayout{LayoutKind::kLadder, spec.lattice};
  const SpinLayout& L = step.layout;
  const Lattice2D& lat = spec.lattice;
  const int nx = lat.n_x();
  const int ny = lat.n_y();
  const int n = lat.n_sites();
  const int n_sys = L.n_modes();
  auto chain_pos = [&](int spin, int r, int c) { return spin * n + r * nx + c; };

  std::vector<Gate> horizontal;
  std::vector<FermionOperator> hfrag;
  for (int parity : {1, 0}) {
    auto group = horizontal_group(spec, parity);
    hfrag.push_back(group_operator(spec, L, group));
    for (const auto& [b, s] : group) {
      append(horizontal, hop_gates(L.mode(b.a, s), L.mode(b.b, s), spec.hopping(b), dt));
    }
  }

  std::vector<Gate> vertical;
  std::vector<int> final_order = identity_order(n_sys);
  auto vhop = [&](int r, int c, int qa, int qb) {
    Bond b = make_bond(lat.index(r, c), lat.index(r + 1, c), true);
    append(vertical, hop_gates(qa, qb, spec.hopping(b), dt));
  };
  bool idle = true;
  for (const Bond& b : lattice_bonds(lat, false)) idle = idle && (!b.vertical || spec.hopping(b) * dt == 0);
  if (idle) {
  } else if (scheme == LadderScheme::kRowPairs) {
    for (int parity : {0, 1}) {
      std::vector<Gate> trans;
      for (int r = parity; r + 1 < ny; r += 2) {
        for (int s : {kUp, kDown}) append(trans, in_situ_transposition(nx, chain_pos(s, r, 0)));
      }
      append(vertical, trans);
      for (int r = parity; r + 1 < ny; r += 2) {
        for (int s : {kUp, kDown}) {
          for (int c = 0; c < nx; c++) {
            int base = chain_pos(s, r, 0);
            vhop(r, c, base + 2 * c, base + 2 * c + 1);
          }
        }
      }
      for (auto it = trans.rbegin(); it != trans.rend(); ++it) vertical.push_back(*it);
    }
  } else {
    std::vector<Gate> trans;
    for (int s : {kUp, kDown}) append(trans, full_transposition(nx, ny, s * n));
    append(vertical, trans);
    for (int parity : {0, 1}) {
      for (int r = parity; r + 1 < ny; r += 2) {
        for (int s : {kUp, kDown}) {
          for (int c = 0; c < nx; c++) {
            vhop(r, c, s * n + c * ny + r, s * n + c * ny + r + 1);
          }
        }
      }
    }
    final_order = track_fswaps(trans, n_sys);
  }
  std::vector<int> qubit_of_mode(n_sys);
  for (int q = 0; q < n_sys; q++) qubit_of_mode[final_order[q]] = q;
  std::vector<Gate> onsite = onsite_gates(spec, L, dt, qubit_of_mode);

  step.part_names = {"horizontal", "vertical", "onsite"};
  step.parts = {schedule(horizontal, n_sys), schedule(vertical, n_sys), schedule(onsite, n_sys)};
  step.fragments = {hfrag, {vertical_operator(spec, L, 0), vertical_operator(spec, L, 1)},
                    {onsite_operator(spec, L)}};
  step.final_order = final_order;
  finish(step, n_sys, 0);
  return step;
}

namespace {

// exp(-i tau H) psi by a Taylor series with |h| ||H||_1 <= 1/2 per piece.
Statevector expmv_sparse(const SparseMatrix& h, Statevector psi, double tau) {
  double bound = 0;
  for (int k = 0; k < h.outerSize(); k++) {
    double row = 0;
    for (SparseMatrix::InnerIterator it(h, k); it; ++it) row += std::abs(it.value());
    bound = std::max(bound, row);
  }
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(tau) * bound / 0.5)));
  const double step = tau / pieces;
  for (int p = 0; p < pieces; p++) {
    Statevector term = psi;
    Statevector acc = psi;
    for (int k = 1; k <= 60; k++) {
      term = (h * term) * Complex(0, -step / k);
      acc += term;
      if (term.norm() <= 1e-17 * acc.norm()) break;
    }
    psi = std::move(acc);
  }
  return psi;
}

}  // namespace

StepCheck verify_trotter_step(const TrotterStep& step, double dt, int trials, uint64_t seed) {
  const int n = step.layout.n_modes();
  if (n > 20) {
    throw Error("verify_trotter_step: at most 20 system modes");
  }
  std::vector<std::vector<SparseMatrix>> ops;
  for (const auto& part : step.fragments) {
    ops.emplace_back();
    for (const FermionOperator& f : part) ops.back().push_back(jw_sparse(f, n));
  }
  bool reordered = false;
  for (int q = 0; q < n; q++) reordered = reordered || step.final_order[q] != q;
  std::mt19937_64 rng(seed);
  StepCheck out;
  const Eigen::Index d = Eigen::Index{1} << n;
  auto run = [&](const Circuit& c, const std::vector<size_t>& parts, bool undo) {
    Statevector sys = random_state(n, rng);
    Statevector psi = Statevector::Zero(Eigen::Index{1} << std::max(n, c.n_qubits()));
    psi.head(d) = sys;
    apply_circuit_inplace(psi, c);
    out.ancilla_leak = std::max(out.ancilla_leak, psi.tail(psi.size() - d).norm());
    Statevector got = psi.head(d);
    if (undo) got = permute_modes(got, step.final_order);
    for (size_t i : parts)
      for (const SparseMatrix& h : ops[i]) sys = expmv_sparse(h, sys, dt);
    return (got - sys).cwiseAbs().maxCoeff();
  };
  std::vector<size_t> all;
  for (size_t i = 0; i < ops.size(); i++) all.push_back(i);
  for (int t = 0; t < trials; t++) {
    if (!reordered) {
      out.part_error = std::max(out.part_error, 0.0);
      for (size_t i = 0; i < ops.size(); i++) {
        out.part_error = std::max(out.part_error, run(step.parts[i], {i}, false));
      }
    }
    out.step_error = std::max(out.step_error, run(step.circuit, all, reordered));
  }
  return out;
}

}  // namespace fermiforge
