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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fermiforge/adiabatic.hpp"
#include "fermiforge/bcs.hpp"
#include "fermiforge/fock.hpp"
#include "fermiforge/fourier.hpp"
#include "fermiforge/gamma.hpp"
#include "fermiforge/hubbard.hpp"
#include "fermiforge/io.hpp"
#include "fermiforge/simulator.hpp"
#include "fermiforge/synthesis.hpp"

using namespace fermiforge;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string config;
  std::string lattice = "2x2";
  double t = 1.0;
  double u = 4.0;
  double mu = 0.0;
  double delta = 0.1;
  double zeta = 0.0;
  double eta = 0.0;
  double dt = 0.05;
  double total_time = 100.0;
  int steps = 20;
  int order = 2;
  uint64_t seed = 1;
  std::string out;
  bool verify = false;
  double tolerance = -1.0;

  std::string q_file;
  std::string h_file;
  std::vector<int> random_shape;
  bool pairing = false;

  int check_parity = 0;
  bool check_state = false;

  std::string variant = "2d";
  std::string scheme = "row-pairs";
  std::string counts_csv;

  std::vector<std::string> grids{"2x2", "3x2", "4x2"};
  std::vector<int> n_list{100, 200, 400, 800};
  int substeps = 16000;
  int samples = 20;
  std::string integrator = "magnus4";
};

double tol_or(const Options& o, double fallback) { return o.tolerance > 0 ? o.tolerance : fallback; }

void emit_circuit(const Options& o, const Circuit& c) {
  if (!o.out.empty()) {
    write_text_file_atomic(o.out, serialize(c));
    std::cout << "wrote " << o.out << "\n";
  }
}

void print_metrics(const Circuit& c) {
  Metrics m = metrics(c);
  std::cout << "qubits " << c.n_qubits() << " (ancilla " << c.n_ancilla << ")\n"
            << "two_qubit " << m.two_qubit_count << "\ntotal " << m.total_count << "\ndepth " << m.depth << "\n";
  for (const auto& [k, v] : m.by_kind) std::cout << "  " << k << " " << v << "\n";
}

int verdict(bool ok, const std::string& what) {
  std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
  return ok ? 0 : kExitVerify;
}

int cmd_slater(const Options& o) {
  std::mt19937_64 rng(o.seed);
  ComplexMatrix q;
  if (!o.q_file.empty()) {
    q = matrix_from_json(Json::parse(read_text_file(o.q_file)));
  } else if (o.random_shape.size() == 2) {
    q = random_isometry(o.random_shape[1], o.random_shape[0], rng);
  } else {
    throw CLI::ValidationError("slater", "need --q FILE or --random N M");
  }
  const int m = static_cast<int>(q.rows());
  const int n = static_cast<int>(q.cols());
  SlaterSynthesis s = synthesize_slater(q);
  std::cout << "N " << n << " M " << m << "\nrotations " << s.rotations.size() << " (expected " << (n - m) * m
            << ")\nrotation_depth " << s.rotation_depth << "\n";
  print_metrics(s.circuit);
  emit_circuit(o, s.circuit);
  if (!o.verify) return 0;
  if (n > kMaxStateModes) throw Error("--verify needs N <= 26");
  double f = fidelity(apply_circuit(vacuum(n), s.circuit), slater_state(q));
  std::cout << "fidelity " << f << "\n";
  return verdict(f >= 1 - tol_or(o, 1e-10), "slater state");
}

QuadraticHamiltonian read_quadratic(const std::string& path) {
  Json j = Json::parse(read_text_file(path));
  QuadraticHamiltonian h;
  h.m = matrix_from_json(j.at("m"));
  h.delta = j.contains("delta") ? matrix_from_json(j.at("delta")) : ComplexMatrix::Zero(h.m.rows(), h.m.cols());
  h.mu = j.value("mu", 0.0);
  return h;
}

int cmd_gaussian(const Options& o) {
  std::mt19937_64 rng(o.seed);
  QuadraticHamiltonian h;
  if (!o.h_file.empty()) {
    h = read_quadratic(o.h_file);
  } else if (o.random_shape.size() == 1) {
    h = random_quadratic(o.random_shape[0], o.pairing, rng);
  } else {
    throw CLI::ValidationError("gaussian", "need --hamiltonian FILE or --random N");
  }
  h.validate();
  GaussianSynthesis g = synthesize_gaussian(h);
  const int n = h.n_modes();
  std::cout << "N " << n << "\ngivens " << g.n_givens << " (bound " << n * (n - 1) / 2 << ")\nparticle_hole "
            << g.n_particle_hole << " (bound " << n << ")\nslater_path " << (g.used_slater_path ? "yes" : "no")
            << "\n";
  print_metrics(g.circuit);
  emit_circuit(o, g.circuit);
  if (!o.verify) return 0;
  if (n > kMaxDenseModes) throw Error("--verify needs N <= 14");
  ComplexMatrix dense = dense_hamiltonian(h);
  Statevector psi = apply_circuit(vacuum(n), g.circuit);
  double e = psi.dot(dense * psi).real();
  double e0 = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(dense, Eigen::EigenvaluesOnly).eigenvalues()(0);
  std::cout << "energy " << e << "\nground " << e0 << "\n";
  return verdict(std::abs(e - e0) <= tol_or(o, 1e-8), "gaussian energy");
}

int cmd_fft2d(const Options& o) {
  Lattice2D lat = parse_lattice(o.lattice);
  int rc = 0;
  if (!o.out.empty() || o.check_state) {
    const int n = lat.n_sites();
    const int nx = lat.n_x(), ny = lat.n_y();
    FactorizedTransform f = build_factorized_transform(lat, {dft_matrix(nx)}, {dft_matrix(ny)});
    Metrics g = metrics(f.gamma);
    std::cout << "gamma two_qubit " << g.two_qubit_count << " depth " << g.depth << "\n";
    print_metrics(f.circuit);
    emit_circuit(o, f.circuit);
    if (o.check_state) {
      if (f.circuit.n_qubits() > 24) throw Error("--check-state needs at most 24 qubits");
      ComplexMatrix u = factorized_mode_matrix(lat, {dft_matrix(nx)}, {dft_matrix(ny)});
      std::mt19937_64 rng(o.seed);
      double worst = 1.0;
      for (int trial = 0; trial < 20; trial++) {
        uint64_t occ = rng() & ((uint64_t{1} << n) - 1);
        Statevector in = Statevector::Zero(Eigen::Index{1} << f.circuit.n_qubits());
        in(occ) = 1;
        Statevector want = Statevector::Zero(in.size());
        std::vector<int> rows;
        for (int j = 0; j < n; j++)
          if ((occ >> j) & 1) rows.push_back(j);
        if (rows.empty()) {
          want(0) = 1;
        } else {
          ComplexMatrix q(rows.size(), n);
          for (size_t i = 0; i < rows.size(); i++) q.row(i) = u.row(rows[i]);
          want.head(Eigen::Index{1} << n) = slater_state(q);
        }
        worst = std::min(worst, fidelity(apply_circuit(in, f.circuit), want));
      }
      std::cout << "worst momentum-determinant fidelity " << worst << "\n";
      rc |= verdict(worst >= 1 - tol_or(o, 1e-8), "fourier state check");
    }
  }
  if (o.check_parity > 0) {
    ParityCheckReport r = check_random_parity(lat, o.check_parity, o.seed);
    std::cout << "parity samples " << r.samples << " failures " << r.failures << "\n";
    rc |= verdict(r.failures == 0, "gamma parity relation on " + lat.name());
  }
  return rc;
}

int cmd_trotter(const Options& o) {
  HubbardSpec spec{parse_lattice(o.lattice)};
  spec.t = o.t;
  spec.u = o.u;
  spec.mu = o.mu;
  TrotterStep step;
  if (o.variant == "2d") {
    step = synth_trotter_step_2d(spec, o.dt);
  } else if (o.variant == "ancilla") {
    step = synth_vertical_hopping_ancilla(spec, o.dt);
  } else if (o.variant == "ladder") {
    LadderScheme sc = o.scheme == "full-transpose" ? LadderScheme::kFullTranspose : LadderScheme::kRowPairs;
    if (o.scheme != "full-transpose" && o.scheme != "row-pairs") throw Error("unknown scheme " + o.scheme);
    step = synth_trotter_step_ladder(spec, o.dt, sc);
    if (sc == LadderScheme::kRowPairs) {
      LadderCounts lc = ladder_closed_form(spec.lattice.n_x(), spec.lattice.n_y());
      std::cout << "closed form N_trans " << lc.n_trans << " N_int " << lc.n_int << " N_hop " << lc.n_hop << " total "
                << lc.total() << "\n";
    }
  } else {
    throw Error("unknown variant " + o.variant);
  }
  for (size_t i = 0; i < step.parts.size(); i++) {
    Metrics m = metrics(step.parts[i]);
    std::cout << step.part_names[i] << " two_qubit " << m.two_qubit_count << " depth " << m.depth << "\n";
  }
  print_metrics(step.circuit);
  emit_circuit(o, step.circuit);
  if (!o.counts_csv.empty()) {
    Metrics m = metrics(step.circuit);
    std::string label = o.variant == "ladder" ? "ladder-" + o.scheme : o.variant;
    write_text_file_atomic(o.counts_csv, "lattice,variant,two_qubit_count,depth\n" + spec.lattice.name() + "," +
                                             label + "," + std::to_string(m.two_qubit_count) + "," +
                                             std::to_string(m.depth) + "\n");
  }
  if (!o.verify) return 0;
  StepCheck c = verify_trotter_step(step, o.dt, 3, o.seed);
  const double tol = tol_or(o, 1e-9);
  std::cout << "part_error " << c.part_error << "\nstep_error " << c.step_error << "\nancilla_leak "
            << c.ancilla_leak << "\n";
  return verdict(c.part_error <= tol && c.step_error <= tol && c.ancilla_leak <= tol, "trotter step");
}

int cmd_bcs(const Options& o) {
  Lattice2D lat = parse_lattice(o.lattice);
  BcsCircuit b = synth_bcs_momentum(lat, o.t, o.mu, o.delta);
  for (const auto& a : b.angles) {
    std::cout << "k (" << a.kx << "," << a.ky << ") xi " << a.xi << " delta " << a.delta << " theta " << a.theta
              << "\n";
  }
  print_metrics(b.circuit);
  emit_circuit(o, b.circuit);
  if (!o.verify) return 0;
  const int n = 2 * lat.n_sites();
  if (n > kMaxDenseModes) throw Error("--verify needs at most 14 modes");
  Statevector psi = Statevector::Zero(Eigen::Index{1} << b.circuit.n_qubits());
  psi(0) = 1;
  apply_circuit_inplace(psi, b.circuit);
  Statevector sys = psi.head(Eigen::Index{1} << n);
  ComplexMatrix h =
      dense_hamiltonian(dwave_operator(DWaveSpec{lat, o.t, o.mu, o.delta, true}, {LayoutKind::kBlocked, lat}), n);
  double e = sys.dot(h * sys).real();
  double e0 = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
  std::cout << "energy " << e << "\nground " << e0 << "\n";
  return verdict(std::abs(e - e0) <= tol_or(o, 1e-8), "bcs energy");
}

int cmd_trotter_error(const Options& o) {
  ExperimentParams p;
  p.t = o.t;
  p.u = o.u;
  p.mu = o.mu;
  p.total_time = o.total_time;
  p.order = o.order;
  p.samples = o.samples;
  p.exact.substeps = o.substeps;
  p.exact.integrator = o.integrator == "midpoint" ? ExactIntegrator::kMidpoint : ExactIntegrator::kMagnus4;
  std::vector<Lattice2D> grids;
  for (const std::string& g : o.grids) grids.push_back(parse_lattice(g));
  std::vector<GridReport> reps = trotter_error_experiment(grids, p, o.n_list);
  int rc = 0;
  for (const GridReport& r : reps) {
    std::cout << r.grid << " sector " << r.sector_dim << " exact_overlap " << r.exact_overlap << " audit "
              << r.audit_error << " number_drift " << r.number_drift << " norm_drift " << r.norm_drift << "\n";
    bool monotone = true;
    for (size_t i = 0; i < r.traces.size(); i++) {
      const EvolutionTrace& t = r.traces[i];
      std::cout << "  n " << t.n << " final_fidelity " << t.fidelities.back() << " final_overlap "
                << t.ground_space_overlap << "\n";
      if (i > 0) monotone = monotone && t.fidelities.back() >= r.traces[i - 1].fidelities.back();
    }
    if (o.verify) {
      rc |= verdict(r.converged, r.grid + " exact evolution converged");
      rc |= verdict(r.exact_overlap >= 0.99, r.grid + " exact overlap >= 0.99");
      rc |= verdict(monotone, r.grid + " final fidelity nondecreasing in n");
      rc |= verdict(r.number_drift <= tol_or(o, 1e-10), r.grid + " particle number conserved");
    }
  }
  std::string csv = trotter_csv(reps);
  if (!o.out.empty()) {
    write_text_file_atomic(o.out, csv);
    std::cout << "wrote " << o.out << "\n";
  }
  return rc;
}

int cmd_schedule(const Options& o) {
  HubbardSpec fh{parse_lattice(o.lattice)};
  fh.t = o.t;
  fh.u = o.u;
  fh.mu = o.mu;
  DWaveSpec dw{fh.lattice, o.t, o.mu, o.delta, false};
  AdiabaticSchedule sched{o.total_time, o.steps, o.zeta, o.eta};
  sched.validate();
  if (2 * fh.lattice.n_sites() > kMaxDenseModes) throw Error("schedule needs at most 14 modes");
  std::string csv = "s,ground_energy,gap\n";
  double min_gap = INFINITY;
  for (int k = 0; k <= o.steps; k++) {
    double s = double(k) / o.steps;
    RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(build_adiabatic_hamiltonian(fh, dw, sched, s),
                                                                 Eigen::EigenvaluesOnly)
                        .eigenvalues();
    min_gap = std::min(min_gap, ev(1) - ev(0));
    char line[96];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s, ev(0), ev(1) - ev(0));
    csv += line;
  }
  std::cout << "minimum gap " << min_gap << "\n";
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_text_file_atomic(o.out, csv);
    std::cout << "wrote " << o.out << "\n";
  }
  return 0;
}

// Splices "--key value" pairs from a JSON config right after the subcommand
// so that later command-line flags win.
std::vector<std::string> with_config(int argc, char** argv, const CLI::App& app) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (size_t i = 1; i < args.size(); i++) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  const CLI::App* sub = app.get_subcommand_no_throw(args[1]);
  if (sub == nullptr) return args;
  Json cfg = Json::parse(read_text_file(path));
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    // keys meant for other subcommands are ignored
    if (key == "config" || sub->get_option_no_throw(flag) == nullptr) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      extra.push_back(flag);
      extra.push_back(joined);
    } else {
      extra.push_back(flag);
      extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  args.insert(args.begin() + 2, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"fermiforge: fermionic circuit compiler and verifier"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", o.config, "JSON config; flags override it");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--out", o.out, "output path");
    sub->add_flag("--verify", o.verify, "check against the oracle; exit 1 on failure");
    sub->add_option("--tolerance", o.tolerance, "override the check tolerance");
  };
  auto model = [&](CLI::App* sub) {
    sub->add_option("--lattice", o.lattice, "NXxNY");
    sub->add_option("--t", o.t);
    sub->add_option("--u", o.u);
    sub->add_option("--mu", o.mu);
  };

  CLI::App* slater = app.add_subcommand("slater", "Slater determinant circuit");
  common(slater);
  slater->add_option("--q", o.q_file, "Q matrix JSON (M x N)");
  slater->add_option("--random", o.random_shape, "N M")->expected(2)->delimiter(',');

  CLI::App* gaussian = app.add_subcommand("gaussian", "fermionic Gaussian state circuit");
  common(gaussian);
  gaussian->add_option("--hamiltonian", o.h_file, "JSON with m, delta, mu");
  gaussian->add_option("--random", o.random_shape, "N")->expected(1);
  gaussian->add_flag("--pairing", o.pairing, "random Hamiltonian with pairing");

  CLI::App* fft = app.add_subcommand("fft2d", "2D fermionic Fourier transform");
  common(fft);
  fft->add_option("--lattice", o.lattice, "NXxNY");
  fft->add_option("--check-parity", o.check_parity, "random parity checks");
  fft->add_flag("--check-state", o.check_state, "simulate against momentum determinants");

  CLI::App* trotter = app.add_subcommand("trotter", "one Hubbard Trotter step");
  common(trotter);
  model(trotter);
  trotter->add_option("--dt", o.dt);
  trotter->add_option("--variant", o.variant)->check(CLI::IsMember({"2d", "ancilla", "ladder"}));
  trotter->add_option("--scheme", o.scheme, "ladder scheme")->check(CLI::IsMember({"row-pairs", "full-transpose"}));
  trotter->add_option("--counts-csv", o.counts_csv);

  CLI::App* bcs = app.add_subcommand("bcs", "d-wave BCS state preparation");
  common(bcs);
  model(bcs);
  bcs->add_option("--delta", o.delta);

  CLI::App* terr = app.add_subcommand("trotter-error", "adiabatic Trotter error experiment");
  common(terr);
  terr->add_option("--t", o.t);
  terr->add_option("--u", o.u);
  terr->add_option("--mu", o.mu);
  terr->add_option("--grids", o.grids)->delimiter(',');
  terr->add_option("--n-list", o.n_list)->delimiter(',');
  terr->add_option("--total-time", o.total_time);
  terr->add_option("--order", o.order)->check(CLI::IsMember({1, 2}));
  terr->add_option("--substeps", o.substeps);
  terr->add_option("--samples", o.samples);
  terr->add_option("--integrator", o.integrator)->check(CLI::IsMember({"midpoint", "magnus4"}));
  terr->add_option("--steps", o.steps, "single step count; overrides --n-list");

  CLI::App* sched = app.add_subcommand("schedule", "ground energy and gap along the adiabatic path");
  common(sched);
  model(sched);
  sched->add_option("--delta", o.delta);
  sched->add_option("--zeta", o.zeta);
  sched->add_option("--eta", o.eta);
  sched->add_option("--total-time", o.total_time);
  sched->add_option("--steps", o.steps);

  std::vector<std::string> args;
  try {
    args = with_config(argc, argv, app);
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitInput;
  }
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());
  // trotter-error defaults follow the published parameter set
  bool mu_given = std::any_of(args.begin(), args.end(), [](const std::string& a) { return a.rfind("--mu", 0) == 0; });
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }
  for (double x : {o.t, o.u, o.mu, o.delta, o.zeta, o.eta, o.dt, o.total_time}) {
    if (!std::isfinite(x)) {
      std::cerr << "numeric parameters must be finite\n";
      return kExitInput;
    }
  }
  try {
    if (*slater) return cmd_slater(o);
    if (*gaussian) return cmd_gaussian(o);
    if (*fft) return cmd_fft2d(o);
    if (*trotter) return cmd_trotter(o);
    if (*bcs) return cmd_bcs(o);
    if (*sched) return cmd_schedule(o);
    if (*terr) {
      if (!mu_given) o.mu = 1.0;
      if (terr->count("--steps")) o.n_list = {o.steps};
      return cmd_trotter_error(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
