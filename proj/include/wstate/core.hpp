#pragma once

// Reachable Hilbert space of N Lambda-type atoms sharing one cavity mode,
// restricted to the single-excitation manifold plus the zero-excitation
// state that dissipative jumps feed into.
//
// Units: hbar = 1, and every frequency is a multiple of the coupling lambda.

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace wstate {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SystemConfig {
  int n_atoms = 3;
  double lambda = 1.0;
  double detuning = 0.0;

  /// Throws std::invalid_argument unless n_atoms >= 2, lambda > 0, detuning >= 0.
  void validate() const;
  [[nodiscard]] int dimension() const { return 2 * n_atoms + 2; }
};

enum class StateKind { FirstAtomF, AtomExcited, Photon, AtomF, AllGround };

/// One basis vector. `atom` is 1-based and only meaningful for AtomExcited/AtomF
/// (FirstAtomF always refers to atom 1).
struct BasisState {
  StateKind kind;
  int atom;
  int index;

  /// psi1..psi(2N+1) following the three-atom numbering, "ground" for the absorbing state.
  [[nodiscard]] std::string label() const;
  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Canonical order: psi1 = |f,g..g>|0>, psi2 = |e,g..g>|0>, psi3 = |g..g>|1>,
/// then for k = 2..N the pair (|e>_k, |f>_k), and finally |g..g>|0>.
std::vector<BasisState> build_basis(const SystemConfig& cfg);

// Index helpers for the canonical order.
int index_of(const SystemConfig& cfg, StateKind kind, int atom = 1);
int excited_index(int atom);
int f_index(int atom);
inline constexpr int kPhotonIndex = 2;
inline int ground_index(const SystemConfig& cfg) { return cfg.dimension() - 1; }

/// Pure amplitude vector or density matrix on the reachable space.
class QuantumState {
 public:
  static constexpr double kNormTolerance = 1e-9;
  static constexpr double kPositivityTolerance = 1e-8;

  /// Validating constructors.
  static QuantumState pure(Vector amplitudes);
  static QuantumState mixed(Matrix rho);

  /// Wrap integrator output without re-validating; callers own the monitoring.
  static QuantumState trusted_pure(Vector amplitudes);
  static QuantumState trusted_mixed(Matrix rho);

  static QuantumState basis(const SystemConfig& cfg, int index);

  [[nodiscard]] bool is_pure() const { return std::holds_alternative<Vector>(data_); }
  [[nodiscard]] Eigen::Index dimension() const;
  [[nodiscard]] const Vector& amplitudes() const;
  [[nodiscard]] const Matrix& density() const;
  /// |psi><psi| for pure states, the stored matrix otherwise.
  [[nodiscard]] Matrix to_density() const;
  [[nodiscard]] double trace() const;

 private:
  explicit QuantumState(std::variant<Vector, Matrix> data) : data_(std::move(data)) {}
  std::variant<Vector, Matrix> data_;
};

/// Equal-weight superposition of the N |f>-carrying states.
QuantumState w_state(const SystemConfig& cfg);

/// |<psi|rho|psi>| for mixed input, |<psi|phi>|^2 for pure input.
double fidelity(const QuantumState& state, const QuantumState& target);
double fidelity(const Vector& state, const Vector& target);

double population(const QuantumState& state, int index);
double population(const QuantumState& state, const BasisState& b);
/// |<v|state>|^2 (or <v|rho|v>) for an arbitrary normalized direction v.
double projection_population(const QuantumState& state, const Vector& v);

/// Instantaneous zero-energy eigenvector of the resonant Hamiltonian:
/// psi1/Omega1 + sum_k f_k/Omega_s - psi3/lambda, evaluated in homogeneous form
/// so either drive may vanish.
QuantumState dark_state(const SystemConfig& cfg, double omega1, double omega_s);
QuantumState dark_state(double omega1, double omega_s, double lambda);

}  // namespace wstate
