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

#include "fermiforge/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>

#include "fermiforge/hubbard.hpp"
#include "fermiforge/parallel.hpp"

namespace fermiforge {

namespace {

template <class Apply>
ComplexMatrix taylor_evolve(const Apply& apply, ComplexMatrix psi, double tau, double bound) {
  if (tau == 0) return psi;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(tau) * bound / 0.5)));
  const double h = tau / pieces;
  for (int p = 0; p < pieces; p++) {
    ComplexMatrix term = psi;
    ComplexMatrix acc = psi;
    for (int k = 1; k <= 60; k++) {
      term = apply(term) * Complex(0, -h / k);
      acc += term;
      if (term.norm() <= 1e-17 * acc.norm()) break;
    }
    psi = std::move(acc);
  }
  return psi;
}

void fix_phase(ComplexMatrix& psi) {
  Eigen::Index r = 0, c = 0;
  psi.cwiseAbs().maxCoeff(&r, &c);
  Complex z = psi(r, c);
  if (std::abs(z) > 0) psi *= std::conj(z) / std::abs(z);
}

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

HalfFillingSector::HalfFillingSector(const InterpolationModel& model) : model_(model) {
  const int n = model.lattice.n_sites();
  if (n % 2 != 0 || n > 14) {
    throw Error("half-filling sector needs an even site count up to 14");
  }
  std::vector<int> index(size_t{1} << n, -1);
  for (uint64_t a = 0; a < (uint64_t{1} << n); a++) {
    if (std::popcount(a) == n / 2) {
      index[a] = static_cast<int>(configs_.size());
      configs_.push_back(a);
    }
  }
  const int d = dim();
  std::vector<Eigen::Triplet<double>> trip;
  for (const Bond& b : lattice_bonds(model.lattice, false)) {
    for (int col = 0; col < d; col++) {
      uint64_t s = configs_[col];
      for (auto [from, to] : {std::pair{b.a, b.b}, std::pair{b.b, b.a}}) {
        // c+_to c_from
        if (!((s >> from) & 1) || ((s >> to) & 1)) continue;
        int lo = std::min(from, to), hi = std::max(from, to);
        uint64_t between = s & (((uint64_t{1} << hi) - 1) & ~((uint64_t{2} << lo) - 1));
        double sign = std::popcount(between) % 2 ? -1.0 : 1.0;
        uint64_t s2 = s ^ (uint64_t{1} << from) ^ (uint64_t{1} << to);
        trip.emplace_back(index[s2], col, -model.t * sign);
      }
    }
  }
  hop_.resize(d, d);
  hop_.setFromTriplets(trip.begin(), trip.end());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es{RealMatrix(hop_)};
  hop_eval_ = es.eigenvalues();
  hop_evec_ = es.eigenvectors();
  hop_norm_ = hop_eval_.cwiseAbs().maxCoeff();
  int_diag_.resize(d, d);
  for (int a = 0; a < d; a++) {
    for (int b = 0; b < d; b++) {
      int doubles = std::popcount(configs_[a] & configs_[b]);
      int_diag_(a, b) = model.u * doubles - model.mu * n;
    }
  }
}

ComplexMatrix HalfFillingSector::apply(const ComplexMatrix& psi, double s) const {
  ComplexMatrix out = s * int_diag_.cast<Complex>().cwiseProduct(psi);
  if (s != 1) {
    out += (1 - s) * (hop_ * psi + psi * hop_);
  }
  return out;
}

double HalfFillingSector::norm_bound(double s) const {
  return (1 - s) * 2 * hop_norm_ + s * int_diag_.cwiseAbs().maxCoeff();
}

ComplexMatrix HalfFillingSector::evolve(const ComplexMatrix& psi, double s, double tau) const {
  return taylor_evolve([&](const ComplexMatrix& x) { return apply(x, s); }, psi, tau, norm_bound(s));
}

ComplexMatrix HalfFillingSector::evolve_hopping(const ComplexMatrix& psi, double tau) const {
  const ComplexMatrix v = hop_evec_.cast<Complex>();
  ComplexMatrix m = v.transpose() * psi * v;
  for (int a = 0; a < dim(); a++)
    for (int b = 0; b < dim(); b++) m(a, b) *= std::polar(1.0, -tau * (hop_eval_(a) + hop_eval_(b)));
  return v * m * v.transpose();
}

ComplexMatrix HalfFillingSector::evolve_interaction(const ComplexMatrix& psi, double tau) const {
  ComplexMatrix out = psi;
  for (int a = 0; a < dim(); a++)
    for (int b = 0; b < dim(); b++) out(a, b) *= std::polar(1.0, -tau * int_diag_(a, b));
  return out;
}

int HalfFillingSector::hopping_degeneracy() const {
  int deg = 0;
  while (deg < dim() && hop_eval_(deg) - hop_eval_(0) < 1e-9) deg++;
  return deg;
}

ComplexMatrix HalfFillingSector::initial_state() const {
  const int deg = hopping_degeneracy();
  std::vector<RealMatrix> basis;
  for (int i = 0; i < deg; i++)
    for (int j = 0; j < deg; j++) basis.push_back(hop_evec_.col(i) * hop_evec_.col(j).transpose());
  const int g = static_cast<int>(basis.size());
  RealMatrix m(g, g);
  for (int p = 0; p < g; p++)
    for (int q = 0; q < g; q++) m(p, q) = basis[p].cwiseProduct(int_diag_.cwiseProduct(basis[q])).sum();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  std::vector<RealMatrix> ties;
  for (int k = 0; k < g && es.eigenvalues()(k) - es.eigenvalues()(0) < 1e-9; k++) {
    RealMatrix psi = RealMatrix::Zero(dim(), dim());
    for (int p = 0; p < g; p++) psi += es.eigenvectors()(p, k) * basis[p];
    ties.push_back(psi);
  }
  RealMatrix chosen = ties[0];
  if (ties.size() > 1) {
    // Lowest total spin: in the S_z = 0 sector S^2 = S_- S_+, so the Gram
    // matrix of S_+ psi is S^2 on the tied states.
    const int n = model_.lattice.n_sites();
    FermionOperator raise_spin;
    for (int j = 0; j < n; j++) raise_spin.push_back(creation(j) * annihilation(n + j));
    std::vector<Statevector> raised;
    for (const RealMatrix& psi : ties) raised.push_back(apply_operator(raise_spin, to_fock(psi.cast<Complex>())));
    const int k = static_cast<int>(ties.size());
    RealMatrix s2(k, k);
    for (int p = 0; p < k; p++)
      for (int q = 0; q < k; q++) s2(p, q) = raised[p].dot(raised[q]).real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> spin(s2);
    if (spin.eigenvalues()(1) - spin.eigenvalues()(0) < 1e-9) {
      throw Error("initial state is not unique on " + model_.lattice.name());
    }
    chosen.setZero();
    for (int p = 0; p < k; p++) chosen += spin.eigenvectors()(p, 0) * ties[p];
  }
  ComplexMatrix out = chosen.cast<Complex>();
  out /= out.norm();
  fix_phase(out);
  return out;
}

double HalfFillingSector::ground_space_overlap(const ComplexMatrix& psi) const {
  double w = 0;
  for (int a = 0; a < dim(); a++)
    for (int b = 0; b < dim(); b++)
      if ((configs_[a] & configs_[b]) == 0) w += std::norm(psi(a, b));
  return w;
}

double HalfFillingSector::double_occupancy(const ComplexMatrix& psi) const {
  double w = 0;
  for (int a = 0; a < dim(); a++)
    for (int b = 0; b < dim(); b++) w += std::popcount(configs_[a] & configs_[b]) * std::norm(psi(a, b));
  return w;
}

Statevector HalfFillingSector::to_fock(const ComplexMatrix& psi) const {
  const int n = model_.lattice.n_sites();
  Statevector out = Statevector::Zero(Eigen::Index{1} << (2 * n));
  for (int a = 0; a < dim(); a++)
    for (int b = 0; b < dim(); b++) out(configs_[a] | (configs_[b] << n)) = psi(a, b);
  return out;
}

double sector_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("fidelity: shape mismatch");
  }
  return std::norm(a.conjugate().cwiseProduct(b).sum());
}

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Step k of m over [0, 1]: the (s, weight) pairs of each exponential, in time order.
std::vector<std::pair<double, double>> integrator_points(ExactIntegrator integ, int k, int m) {
  if (integ == ExactIntegrator::kMidpoint) {
    return {{(k + 0.5) / m, 1.0}};
  }
  const double s1 = (k + 0.5 - kSqrt3 / 6) / m;
  const double s2 = (k + 0.5 + kSqrt3 / 6) / m;
  const double a1 = 0.25 + kSqrt3 / 6;
  const double a2 = 0.25 - kSqrt3 / 6;
  return {{2 * (a1 * s1 + a2 * s2), 0.5}, {2 * (a2 * s1 + a1 * s2), 0.5}};
}

void check_samples(int steps, int samples) {
  if (steps < 1 || samples < 1 || steps % samples != 0) {
    throw Error("step count must be a positive multiple of the sample count");
  }
}

Trajectory run_exact(const HalfFillingSector& sector, double total_time, int m, int samples,
                     ExactIntegrator integ) {
  check_samples(m, samples);
  Trajectory out;
  ComplexMatrix psi = sector.initial_state();
  const double dt = total_time / m;
  for (int k = 0; k < m; k++) {
    for (auto [s, w] : integrator_points(integ, k, m)) psi = sector.evolve(psi, s, w * dt);
    if ((k + 1) % (m / samples) == 0) {
      out.times.push_back((k + 1) * dt);
      out.states.push_back(psi);
    }
  }
  return out;
}

}  // namespace

ExactRun evolve_exact(const HalfFillingSector& sector, double total_time, const ExactOptions& opts) {
  if (!(total_time >= 0) || !std::isfinite(total_time)) throw Error("total time must be finite and >= 0");
  ExactRun run;
  if (!opts.audit) {
    run.trajectory = run_exact(sector, total_time, opts.substeps, opts.samples, opts.integrator);
    return run;
  }
  Trajectory fine;
  parallel_tasks(2, [&](int i) {
    if (i == 0) {
      run.trajectory = run_exact(sector, total_time, opts.substeps, opts.samples, opts.integrator);
    } else {
      fine = run_exact(sector, total_time, 2 * opts.substeps, opts.samples, opts.integrator);
    }
  });
  run.audit_error = (run.trajectory.states.back() - fine.states.back()).norm();
  run.converged = run.audit_error < opts.audit_tolerance;
  return run;
}

Trajectory evolve_exact_dense(const std::function<ComplexMatrix(double)>& h_at, double total_time, int substeps,
                              const Statevector& psi0, int samples, ExactIntegrator integ) {
  check_samples(substeps, samples);
  Trajectory out;
  ComplexMatrix psi = psi0;
  const double dt = total_time / substeps;
  for (int k = 0; k < substeps; k++) {
    for (auto [s, w] : integrator_points(integ, k, substeps)) {
      ComplexMatrix h = h_at(s);
      double bound = h.cwiseAbs().rowwise().sum().maxCoeff();
      psi = taylor_evolve([&](const ComplexMatrix& x) -> ComplexMatrix { return h * x; }, psi, w * dt, bound);
    }
    if ((k + 1) % (substeps / samples) == 0) {
      out.times.push_back((k + 1) * dt);
      out.states.push_back(psi);
    }
  }
  return out;
}

Trajectory evolve_trotter(const HalfFillingSector& sector, double total_time, int n, int order, int samples) {
  check_samples(n, samples);
  if (order != 1 && order != 2) throw Error("Trotter order must be 1 or 2");
  Trajectory out;
  ComplexMatrix psi = sector.initial_state();
  const double dt = total_time / n;
  for (int k = 0; k < n; k++) {
    double s = (k + 0.5) / n;
    if (order == 1) {
      psi = sector.evolve_interaction(psi, s * dt);
      psi = sector.evolve_hopping(psi, (1 - s) * dt);
    } else {
      psi = sector.evolve_hopping(psi, 0.5 * (1 - s) * dt);
      psi = sector.evolve_interaction(psi, s * dt);
      psi = sector.evolve_hopping(psi, 0.5 * (1 - s) * dt);
    }
    if ((k + 1) % (n / samples) == 0) {
      out.times.push_back((k + 1) * dt);
      out.states.push_back(psi);
    }
  }
  return out;
}

GridReport trotter_error_grid(const Lattice2D& grid, const ExperimentParams& params, const std::vector<int>& n_list) {
  HalfFillingSector sector(InterpolationModel{grid, params.t, params.u, params.mu});
  GridReport rep;
  rep.grid = grid.name();
  rep.sector_dim = sector.dim() * sector.dim();
  rep.hopping_degeneracy = sector.hopping_degeneracy();
  ExactOptions eo = params.exact;
  eo.samples = params.samples;
  ExactRun exact = evolve_exact(sector, params.total_time, eo);
  rep.audit_error = exact.audit_error;
  rep.converged = exact.converged;
  rep.exact_overlap = sector.ground_space_overlap(exact.trajectory.states.back());

  rep.traces.resize(n_list.size());
  std::vector<double> drift(n_list.size() + 1, 0.0);
  std::vector<double> norm_drift(n_list.size() + 1, 0.0);
  const double n_sites = grid.n_sites();
  auto track = [&](const std::vector<ComplexMatrix>& states, int slot) {
    for (const ComplexMatrix& psi : states) {
      Statevector f = sector.to_fock(psi);
      double nrm = f.squaredNorm();
      drift[slot] = std::max(drift[slot], std::abs(number_expectation(f) / nrm - n_sites));
      norm_drift[slot] = std::max(norm_drift[slot], std::abs(nrm - 1));
    }
  };
  parallel_tasks(static_cast<int>(n_list.size()) + 1, [&](int i) {
    if (i == static_cast<int>(n_list.size())) {
      track(exact.trajectory.states, i);
      return;
    }
    Trajectory tr = evolve_trotter(sector, params.total_time, n_list[i], params.order, params.samples);
    EvolutionTrace& et = rep.traces[i];
    et.grid = rep.grid;
    et.n = n_list[i];
    et.order = params.order;
    et.sample_times = tr.times;
    for (size_t j = 0; j < tr.states.size(); j++) {
      et.fidelities.push_back(sector_fidelity(exact.trajectory.states[j], tr.states[j]));
    }
    et.ground_space_overlap = sector.ground_space_overlap(tr.states.back());
    track(tr.states, i);
  });
  rep.number_drift = *std::max_element(drift.begin(), drift.end());
  rep.norm_drift = *std::max_element(norm_drift.begin(), norm_drift.end());
  return rep;
}

std::vector<GridReport> trotter_error_experiment(const std::vector<Lattice2D>& grids, const ExperimentParams& params,
                                                 const std::vector<int>& n_list) {
  std::vector<GridReport> out;
  for (const Lattice2D& g : grids) out.push_back(trotter_error_grid(g, params, n_list));
  return out;
}

std::string trotter_csv(const std::vector<GridReport>& reports) {
  std::string out = "grid,n,sample_index,time,fidelity\n";
  for (const GridReport& r : reports) {
    for (const EvolutionTrace& t : r.traces) {
      for (size_t j = 0; j < t.fidelities.size(); j++) {
        out += t.grid + "," + std::to_string(t.n) + "," + std::to_string(j) + "," + shortest(t.sample_times[j]) + "," +
               shortest(t.fidelities[j]) + "\n";
      }
    }
  }
  return out;
}

}  // namespace fermiforge
