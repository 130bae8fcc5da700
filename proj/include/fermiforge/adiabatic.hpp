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

#ifndef FERMIFORGE_ADIABATIC_HPP_
#define FERMIFORGE_ADIABATIC_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "fermiforge/fock.hpp"
#include "fermiforge/lattice.hpp"
#include "fermiforge/linalg.hpp"

namespace fermiforge {

/// H(s) = (1 - s) H_hop + s H_int on an open lattice, with
/// H_int = U sum n_up n_dn - mu N.
struct InterpolationModel {
  Lattice2D lattice;
  double t = 1.0;
  double u = 4.0;
  double mu = 1.0;
};

/// The N_up = N_dn = n_sites / 2 sector. A state is a matrix psi(a, b) over
/// up configuration a and down configuration b, ordered c+_up... c+_dn...
/// (blocked layout, snake site order inside each block).
class HalfFillingSector {
 public:
  explicit HalfFillingSector(const InterpolationModel& model);

  const InterpolationModel& model() const { return model_; }
  int dim() const { return static_cast<int>(configs_.size()); }
  const std::vector<uint64_t>& configs() const { return configs_; }
  /// Single-spin hopping matrix within the sector.
  const Eigen::SparseMatrix<double>& hopping() const { return hop_; }
  const RealVector& hopping_energies() const { return hop_eval_; }
  const RealMatrix& hopping_modes() const { return hop_evec_; }
  /// H_int on each (a, b).
  const RealMatrix& interaction() const { return int_diag_; }

  ComplexMatrix apply(const ComplexMatrix& psi, double s) const;
  /// exp(-i tau H(s)) psi.
  ComplexMatrix evolve(const ComplexMatrix& psi, double s, double tau) const;
  ComplexMatrix evolve_hopping(const ComplexMatrix& psi, double tau) const;
  ComplexMatrix evolve_interaction(const ComplexMatrix& psi, double tau) const;
  /// Upper bound on ||H(s)||.
  double norm_bound(double s) const;

  /// Ground state of H_hop; ties are broken by the lowest H_int within the
  /// ground space. Largest amplitude real positive.
  ComplexMatrix initial_state() const;
  int hopping_degeneracy() const;
  /// Weight on the H_int ground space (every site singly occupied).
  double ground_space_overlap(const ComplexMatrix& psi) const;
  double double_occupancy(const ComplexMatrix& psi) const;
  /// The same state as a 2^(2 n_sites) Fock vector, blocked layout.
  Statevector to_fock(const ComplexMatrix& psi) const;

 private:
  InterpolationModel model_;
  std::vector<uint64_t> configs_;
  Eigen::SparseMatrix<double> hop_;
  RealVector hop_eval_;
  RealMatrix hop_evec_;
  RealMatrix int_diag_;
  double hop_norm_ = 0.0;
};

double sector_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

enum class ExactIntegrator { kMidpoint, kMagnus4 };

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
};

struct ExactOptions {
  int substeps = 16000;
  int samples = 20;
  ExactIntegrator integrator = ExactIntegrator::kMagnus4;
  /// Rerun at twice the substeps and report the final-state distance.
  bool audit = true;
  double audit_tolerance = 1e-8;
};

struct ExactRun {
  Trajectory trajectory;
  double audit_error = -1.0;
  bool converged = true;
};

/// Samples at (i + 1) T / samples.
ExactRun evolve_exact(const HalfFillingSector& sector, double total_time, const ExactOptions& opts);

/// Generic dense version on a full state; `h_at(s)` must be Hermitian.
Trajectory evolve_exact_dense(const std::function<ComplexMatrix(double)>& h_at, double total_time, int substeps,
                              const Statevector& psi0, int samples, ExactIntegrator integrator);

/// Order 1: exp(-i(1-s)dt H_hop) exp(-i s dt H_int); order 2 splits the
/// hopping factor symmetrically. s at the step midpoint; n % samples == 0.
Trajectory evolve_trotter(const HalfFillingSector& sector, double total_time, int n, int order, int samples);

struct EvolutionTrace {
  std::string grid;
  int n = 0;
  int order = 2;
  std::vector<double> sample_times;
  std::vector<double> fidelities;
  double ground_space_overlap = 0.0;
};

struct GridReport {
  std::string grid;
  int sector_dim = 0;
  int hopping_degeneracy = 1;
  double exact_overlap = 0.0;
  double audit_error = -1.0;
  bool converged = true;
  /// Largest |<N>/<psi|psi> - n_sites| over the sampled exact and Trotter states.
  double number_drift = 0.0;
  /// Largest | |psi|^2 - 1 | over the same states.
  double norm_drift = 0.0;
  std::vector<EvolutionTrace> traces;
};

struct ExperimentParams {
  double t = 1.0;
  double u = 4.0;
  double mu = 1.0;
  double total_time = 100.0;
  int order = 2;
  int samples = 20;
  ExactOptions exact;
};

GridReport trotter_error_grid(const Lattice2D& grid, const ExperimentParams& params, const std::vector<int>& n_list);
std::vector<GridReport> trotter_error_experiment(const std::vector<Lattice2D>& grids, const ExperimentParams& params,
                                                 const std::vector<int>& n_list);

/// grid,n,sample_index,time,fidelity
std::string trotter_csv(const std::vector<GridReport>& reports);

}  // namespace fermiforge

#endif  // FERMIFORGE_ADIABATIC_HPP_
