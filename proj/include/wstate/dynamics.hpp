#pragma once

// Fixed-step RK4 propagation of pure states and density matrices with
// conservation monitors and automatic step doubling.

#include <stdexcept>
#include <vector>

#include "wstate/core.hpp"
#include "wstate/hamiltonians.hpp"

namespace wstate {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n_steps = 4000;

  void validate() const;
  [[nodiscard]] double step() const { return (t_end - t_start) / n_steps; }
};

/// Jump operators with their rates folded in as sqrt(gamma) prefactors.
struct LindbladSet {
  std::vector<Matrix> operators;
};

/// Spontaneous emission |f>_k<e| and |g>_k<e| of every atom at rate gamma/2
/// each (ordered atom by atom, f-channel first) followed by cavity loss
/// sqrt(kappa) a. 2N + 1 operators.
LindbladSet lindblad_ops(const SystemConfig& cfg, double gamma, double kappa);

struct Monitors {
  double max_norm_drift = 0.0;          // pure runs
  double max_trace_drift = 0.0;         // mixed runs
  double max_hermiticity_error = 0.0;   // mixed runs, before symmetrization
  double min_eigenvalue = 0.0;          // mixed runs
  int steps_used = 0;
  int refinements = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  Monitors monitors;

  [[nodiscard]] const QuantumState& final_state() const { return states.back(); }
};

struct EvolveOptions {
  /// Record every k-th step of the requested grid; 0 keeps only the endpoints.
  int store_every = 1;
  int max_refinements = 3;
  double norm_tolerance = 1e-8;
  double trace_tolerance = 1e-7;
  double positivity_tolerance = 1e-6;
  /// Minimum-eigenvalue checks happen every this many steps and at the end.
  int positivity_check_every = 10;
};

class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, Monitors m) : std::runtime_error(what), monitors(m) {}
  Monitors monitors;
};

/// i d/dt psi = H psi. Refines the step while the norm drift exceeds the
/// tolerance; stored times always lie on the requested grid.
Trajectory evolve_schrodinger(const TimeDependentOperator& h, const QuantumState& psi0, const TimeGrid& grid,
                              const EvolveOptions& opts = {});

/// d/dt rho = i[rho, H] + sum_k (L rho L^+ - {L^+ L, rho}/2).
Trajectory evolve_lindblad(const TimeDependentOperator& h, const LindbladSet& ops, const QuantumState& rho0,
                           const TimeGrid& grid, const EvolveOptions& opts = {});

}  // namespace wstate
