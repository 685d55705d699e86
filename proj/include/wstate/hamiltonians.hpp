#pragma once

// Hamiltonian builders for the resonant (STIRAP / Zeno) and detuned (APF)
// cavity models, their Zeno-projected and adiabatically eliminated effective
// forms, and the counter-diabatic term in closed and numerical form.

#include <functional>
#include <stdexcept>
#include <vector>

#include "wstate/core.hpp"
#include "wstate/pulses.hpp"

namespace wstate {

struct TimeDependentOperator {
  std::function<Matrix(double)> evaluate;
  Eigen::Index dimension = 0;

  Matrix operator()(double t) const { return evaluate(t); }
};

double hermiticity_error(const Matrix& m);

/// Omega_1 |e>_1<f| + Omega_s sum_{k>=2} |e>_k<f| + lambda a sum_k |e>_k<g| + H.c.
/// + detuning on every |e>_k. The absorbing state's row and column stay zero.
Matrix cavity_hamiltonian(const SystemConfig& cfg, cplx omega1, cplx omega_s, double detuning);
/// Laser part only (H_al).
Matrix drive_hamiltonian(const SystemConfig& cfg, cplx omega1, cplx omega_s);
/// Cavity part only (H_ac).
Matrix coupling_hamiltonian(const SystemConfig& cfg);

/// Resonant model; rejects complex drives and cfg.detuning != 0.
Matrix build_H0(const SystemConfig& cfg, const PulseSchedule& pulses, double t);
/// Detuned model with Delta = cfg.detuning > 0 on every atomic excited state.
Matrix build_APF(const SystemConfig& cfg, const PulseSchedule& pulses, double t);

TimeDependentOperator h0_operator(const SystemConfig& cfg, PulseSchedule pulses);
TimeDependentOperator apf_operator(const SystemConfig& cfg, PulseSchedule pulses);

struct ZenoDecomposition {
  std::vector<Matrix> projectors;
  std::vector<double> eigenvalues;
  double coupling = 0.0;
};

struct ZenoEffective {
  ZenoDecomposition decomposition;
  Matrix hamiltonian;
};

/// sum_n (K xi_n P_n + P_n H_obs P_n) over the eigenprojectors of H_meas.
/// Degenerate eigenvalues are grouped with tolerance 1e-8 * ||H_meas||.
ZenoEffective zeno_effective(const Matrix& h_obs, const Matrix& h_meas, double coupling);

/// 3x3 on (psi1, zeta, phi1): -sqrt(2) Omega1/sqrt(3) |phi1><psi1|
/// + Omega_s/sqrt(3) |phi1><zeta| + H.c. + Delta |phi1><phi1|.
Matrix build_HZ(cplx omega1, cplx omega_s, double delta);
/// 2x2 on (psi1, zeta), after eliminating phi1 at detuning Delta.
Matrix build_Heff(cplx omega1, cplx omega_s, double delta);
/// 2x2 on (psi1, zeta): i theta_dot |zeta><psi1| - i theta_dot |psi1><zeta|.
Matrix build_HCDD(double theta_dot);

class EigenCrossing : public std::runtime_error {
 public:
  EigenCrossing(double t, double gap);
  double time;
  double gap;
};

/// Counter-diabatic term i sum_m |d_t Psi_m><Psi_m| of a parametrized Hermitian
/// matrix, with eigenvector derivatives from a central difference of step dt.
/// Berry-phase diagonals are projected out and the result is symmetrized.
Matrix numeric_cdd(const TimeDependentOperator& h, double t, double dt);

/// Eigenvectors of a Hermitian matrix with each column's phase fixed so its
/// largest-magnitude component is real and positive.
struct GaugedEigensystem {
  Eigen::VectorXd values;
  Matrix vectors;
};
GaugedEigensystem gauged_eigensystem(const Matrix& h);
/// Rotate each column of `next` to have a real positive overlap with `ref`.
void align_phases(const Matrix& ref, Matrix& next);
/// Smallest distance between adjacent eigenvalues.
double min_gap(const Eigen::VectorXd& sorted_values);

/// Named vectors of the three-atom Zeno analysis, in the canonical 8-dim basis.
struct ZenoBasis {
  Vector phi1, phi2, phi3, mu_plus, mu_minus, zeta;
};
ZenoBasis zeno_basis_states();

// N-atom analogues used by the protocols.
Vector zeta_state(const SystemConfig& cfg);     // sum_{k>=2} |f>_k / sqrt(N-1)
Vector bright_excited(const SystemConfig& cfg); // sum_{k>=2} |e>_k / sqrt(N-1); mu_plus at N = 3
Vector phi1_state(const SystemConfig& cfg);     // (-sqrt(N-1) |e>_1 + bright_excited) / sqrt(N)
/// Orthonormal columns (psi1, psi2, psi3, bright_excited, zeta): the sector
/// coupled to psi1 by the symmetric drives.
Matrix symmetric_sector(const SystemConfig& cfg);

}  // namespace wstate
