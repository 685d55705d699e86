#include "wstate/core.hpp"

#include <cmath>
#include <stdexcept>

namespace wstate {

void SystemConfig::validate() const {
  if (n_atoms < 2) throw std::invalid_argument("n_atoms must be >= 2");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(detuning >= 0.0)) throw std::invalid_argument("detuning must be >= 0");
}

std::string BasisState::label() const {
  if (kind == StateKind::AllGround) return "ground";
  return "psi" + std::to_string(index + 1);
}

int excited_index(int atom) { return atom == 1 ? 1 : 3 + 2 * (atom - 2); }
int f_index(int atom) { return atom == 1 ? 0 : 4 + 2 * (atom - 2); }

int index_of(const SystemConfig& cfg, StateKind kind, int atom) {
  if (kind == StateKind::AtomExcited || kind == StateKind::AtomF) {
    if (atom < 1 || atom > cfg.n_atoms) throw std::out_of_range("atom index out of range");
  }
  switch (kind) {
    case StateKind::FirstAtomF: return 0;
    case StateKind::Photon: return kPhotonIndex;
    case StateKind::AllGround: return ground_index(cfg);
    case StateKind::AtomExcited: return excited_index(atom);
    case StateKind::AtomF:
      if (atom == 1) throw std::invalid_argument("atom 1 |f> is FirstAtomF");
      return f_index(atom);
  }
  throw std::logic_error("unreachable");
}

std::vector<BasisState> build_basis(const SystemConfig& cfg) {
  cfg.validate();
  std::vector<BasisState> out;
  out.reserve(cfg.dimension());
  out.push_back({StateKind::FirstAtomF, 1, 0});
  out.push_back({StateKind::AtomExcited, 1, 1});
  out.push_back({StateKind::Photon, 0, kPhotonIndex});
  for (int k = 2; k <= cfg.n_atoms; ++k) {
    out.push_back({StateKind::AtomExcited, k, excited_index(k)});
    out.push_back({StateKind::AtomF, k, f_index(k)});
  }
  out.push_back({StateKind::AllGround, 0, ground_index(cfg)});
  return out;
}

// ---------------------------------------------------------------------------

QuantumState QuantumState::pure(Vector amplitudes) {
  if (amplitudes.size() == 0) throw std::invalid_argument("empty state vector");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state vector is not normalized");
  }
  return QuantumState(std::move(amplitudes));
}

QuantumState QuantumState::mixed(Matrix rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cplx(1.0)) > kNormTolerance) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTolerance) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
  return QuantumState(std::move(rho));
}

QuantumState QuantumState::trusted_pure(Vector amplitudes) { return QuantumState(std::move(amplitudes)); }
QuantumState QuantumState::trusted_mixed(Matrix rho) { return QuantumState(std::move(rho)); }

QuantumState QuantumState::basis(const SystemConfig& cfg, int index) {
  if (index < 0 || index >= cfg.dimension()) throw std::out_of_range("basis index out of range");
  Vector v = Vector::Zero(cfg.dimension());
  v(index) = 1.0;
  return QuantumState(std::move(v));
}

Eigen::Index QuantumState::dimension() const {
  return is_pure() ? std::get<Vector>(data_).size() : std::get<Matrix>(data_).rows();
}

const Vector& QuantumState::amplitudes() const {
  if (!is_pure()) throw std::logic_error("mixed state has no amplitude vector");
  return std::get<Vector>(data_);
}

const Matrix& QuantumState::density() const {
  if (is_pure()) throw std::logic_error("pure state stores no density matrix; use to_density()");
  return std::get<Matrix>(data_);
}

Matrix QuantumState::to_density() const {
  if (is_pure()) {
    const auto& v = std::get<Vector>(data_);
    return v * v.adjoint();
  }
  return std::get<Matrix>(data_);
}

double QuantumState::trace() const {
  return is_pure() ? std::get<Vector>(data_).squaredNorm() : std::get<Matrix>(data_).trace().real();
}

// ---------------------------------------------------------------------------

QuantumState w_state(const SystemConfig& cfg) {
  cfg.validate();
  Vector v = Vector::Zero(cfg.dimension());
  const double a = 1.0 / std::sqrt(static_cast<double>(cfg.n_atoms));
  for (int k = 1; k <= cfg.n_atoms; ++k) v(f_index(k)) = a;
  return QuantumState::pure(std::move(v));
}

double fidelity(const Vector& state, const Vector& target) {
  if (state.size() != target.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(target.dot(state));
}

double fidelity(const QuantumState& state, const QuantumState& target) {
  if (!target.is_pure()) throw std::invalid_argument("fidelity: target must be pure");
  if (state.dimension() != target.dimension()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Vector& t = target.amplitudes();
  if (state.is_pure()) return fidelity(state.amplitudes(), t);
  return std::abs(t.dot(state.density() * t));
}

double population(const QuantumState& state, int index) {
  if (index < 0 || index >= state.dimension()) throw std::out_of_range("population: index out of range");
  if (state.is_pure()) return std::norm(state.amplitudes()(index));
  return std::abs(state.density()(index, index).real());
}

double population(const QuantumState& state, const BasisState& b) { return population(state, b.index); }

double projection_population(const QuantumState& state, const Vector& v) {
  if (v.size() != state.dimension()) throw std::invalid_argument("projection_population: dimension mismatch");
  if (state.is_pure()) return std::norm(v.dot(state.amplitudes()));
  return std::abs(v.dot(state.density() * v));
}

QuantumState dark_state(const SystemConfig& cfg, double omega1, double omega_s) {
  cfg.validate();
  if (omega1 == 0.0 && omega_s == 0.0) throw std::invalid_argument("dark_state: both drives are zero");
  const double lam = cfg.lambda;
  Vector v = Vector::Zero(cfg.dimension());
  v(0) = omega_s * lam;
  for (int k = 2; k <= cfg.n_atoms; ++k) v(f_index(k)) = omega1 * lam;
  v(kPhotonIndex) = -omega1 * omega_s;
  v.normalize();
  return QuantumState::pure(std::move(v));
}

QuantumState dark_state(double omega1, double omega_s, double lambda) {
  return dark_state(SystemConfig{3, lambda, 0.0}, omega1, omega_s);
}

}  // namespace wstate
