#include "wstate/hamiltonians.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

namespace wstate {

namespace {

constexpr cplx kI{0.0, 1.0};

void add_coupling(Matrix& h, int to, int from, cplx value) {
  h(to, from) += value;
  h(from, to) += std::conj(value);
}

void check_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (hermiticity_error(m) > 1e-12 * scale) throw std::invalid_argument(std::string(what) + " is not Hermitian");
}

}  // namespace

double hermiticity_error(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix drive_hamiltonian(const SystemConfig& cfg, cplx omega1, cplx omega_s) {
  cfg.validate();
  Matrix h = Matrix::Zero(cfg.dimension(), cfg.dimension());
  add_coupling(h, excited_index(1), f_index(1), omega1);
  for (int k = 2; k <= cfg.n_atoms; ++k) add_coupling(h, excited_index(k), f_index(k), omega_s);
  return h;
}

Matrix coupling_hamiltonian(const SystemConfig& cfg) {
  cfg.validate();
  Matrix h = Matrix::Zero(cfg.dimension(), cfg.dimension());
  for (int k = 1; k <= cfg.n_atoms; ++k) add_coupling(h, excited_index(k), kPhotonIndex, cfg.lambda);
  return h;
}

Matrix cavity_hamiltonian(const SystemConfig& cfg, cplx omega1, cplx omega_s, double detuning) {
  Matrix h = drive_hamiltonian(cfg, omega1, omega_s) + coupling_hamiltonian(cfg);
  for (int k = 1; k <= cfg.n_atoms; ++k) h(excited_index(k), excited_index(k)) += detuning;
  return h;
}

Matrix build_H0(const SystemConfig& cfg, const PulseSchedule& pulses, double t) {
  if (cfg.detuning != 0.0) throw std::invalid_argument("build_H0: resonant model requires detuning = 0");
  const cplx o1 = pulses.omega1(t);
  const cplx os = pulses.omega_s(t);
  if (o1.imag() != 0.0 || os.imag() != 0.0) {
    throw std::invalid_argument("build_H0: complex pulse amplitude supplied to the resonant model");
  }
  return cavity_hamiltonian(cfg, o1, os, 0.0);
}

Matrix build_APF(const SystemConfig& cfg, const PulseSchedule& pulses, double t) {
  if (!(cfg.detuning > 0.0)) throw std::invalid_argument("build_APF: detuning must be > 0");
  return cavity_hamiltonian(cfg, pulses.omega1(t), pulses.omega_s(t), cfg.detuning);
}

TimeDependentOperator h0_operator(const SystemConfig& cfg, PulseSchedule pulses) {
  cfg.validate();
  if (cfg.detuning != 0.0) throw std::invalid_argument("build_H0: resonant model requires detuning = 0");
  return {[cfg, p = std::move(pulses)](double t) { return build_H0(cfg, p, t); }, cfg.dimension()};
}

TimeDependentOperator apf_operator(const SystemConfig& cfg, PulseSchedule pulses) {
  cfg.validate();
  if (!(cfg.detuning > 0.0)) throw std::invalid_argument("build_APF: detuning must be > 0");
  return {[cfg, p = std::move(pulses)](double t) { return build_APF(cfg, p, t); }, cfg.dimension()};
}

// ---------------------------------------------------------------------------

ZenoEffective zeno_effective(const Matrix& h_obs, const Matrix& h_meas, double coupling) {
  check_hermitian(h_obs, "H_obs");
  check_hermitian(h_meas, "H_meas");
  if (h_obs.rows() != h_meas.rows()) throw std::invalid_argument("zeno_effective: dimension mismatch");
  if (!(coupling > 0.0)) throw std::invalid_argument("zeno_effective: coupling must be > 0");

  Eigen::SelfAdjointEigenSolver<Matrix> es(h_meas);
  const Eigen::VectorXd& values = es.eigenvalues();
  const Matrix& vectors = es.eigenvectors();
  const double scale = values.cwiseAbs().maxCoeff();
  const double tol = 1e-8 * scale;

  ZenoEffective out;
  out.decomposition.coupling = coupling;
  const Eigen::Index n = values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values(end) - values(end - 1) <= tol) ++end;
    const Matrix block = vectors.middleCols(start, end - start);
    out.decomposition.projectors.push_back(block * block.adjoint());
    out.decomposition.eigenvalues.push_back(values.segment(start, end - start).mean());
    start = end;
  }

  out.hamiltonian = Matrix::Zero(h_obs.rows(), h_obs.cols());
  for (std::size_t i = 0; i < out.decomposition.projectors.size(); ++i) {
    const Matrix& p = out.decomposition.projectors[i];
    out.hamiltonian += coupling * out.decomposition.eigenvalues[i] * p + p * h_obs * p;
  }
  return out;
}

Matrix build_HZ(cplx omega1, cplx omega_s, double delta) {
  Matrix h = Matrix::Zero(3, 3);
  add_coupling(h, 2, 0, -std::numbers::sqrt2 * omega1 / std::numbers::sqrt3);
  add_coupling(h, 2, 1, omega_s / std::numbers::sqrt3);
  h(2, 2) = delta;
  return h;
}

Matrix build_Heff(cplx omega1, cplx omega_s, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("build_Heff: detuning must be > 0");
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = -2.0 * std::norm(omega1) / (3.0 * delta);
  h(1, 1) = -std::norm(omega_s) / (3.0 * delta);
  add_coupling(h, 1, 0, std::numbers::sqrt2 * omega1 * std::conj(omega_s) / (3.0 * delta));
  return h;
}

Matrix build_HCDD(double theta_dot) {
  Matrix h = Matrix::Zero(2, 2);
  add_coupling(h, 1, 0, kI * theta_dot);
  return h;
}

// ---------------------------------------------------------------------------

EigenCrossing::EigenCrossing(double t, double g)
    : std::runtime_error("eigenvalue crossing near t = " + std::to_string(t) + " (gap " + std::to_string(g) + ")"),
      time(t),
      gap(g) {}

double min_gap(const Eigen::VectorXd& sorted_values) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < sorted_values.size(); ++i) {
    gap = std::min(gap, sorted_values(i) - sorted_values(i - 1));
  }
  return gap;
}

GaugedEigensystem gauged_eigensystem(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  GaugedEigensystem out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index m = 0; m < out.vectors.cols(); ++m) {
    Eigen::Index pivot = 0;
    out.vectors.col(m).cwiseAbs().maxCoeff(&pivot);
    const cplx c = out.vectors(pivot, m);
    out.vectors.col(m) *= std::conj(c) / std::abs(c);
  }
  return out;
}

void align_phases(const Matrix& ref, Matrix& next) {
  for (Eigen::Index m = 0; m < ref.cols(); ++m) {
    const cplx overlap = ref.col(m).dot(next.col(m));
    if (std::abs(overlap) < 0.5) throw std::runtime_error("align_phases: eigenvector changed discontinuously");
    next.col(m) *= std::conj(overlap) / std::abs(overlap);
  }
}

Matrix numeric_cdd(const TimeDependentOperator& h, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("numeric_cdd: dt must be > 0");
  constexpr double kGapTolerance = 1e-8;

  const GaugedEigensystem mid = gauged_eigensystem(h(t));
  GaugedEigensystem fwd = gauged_eigensystem(h(t + dt));
  GaugedEigensystem bwd = gauged_eigensystem(h(t - dt));
  for (const GaugedEigensystem* sys : std::initializer_list<const GaugedEigensystem*>{&mid, &fwd, &bwd}) {
    const double gap = min_gap(sys->values);
    if (gap < kGapTolerance) throw EigenCrossing(t, gap);
  }
  align_phases(mid.vectors, fwd.vectors);
  align_phases(mid.vectors, bwd.vectors);

  const Eigen::Index n = mid.vectors.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index m = 0; m < mid.vectors.cols(); ++m) {
    const Vector v = mid.vectors.col(m);
    Vector dv = (fwd.vectors.col(m) - bwd.vectors.col(m)) / (2.0 * dt);
    dv -= v * v.dot(dv);
    out += kI * dv * v.adjoint();
  }
  return 0.5 * (out + out.adjoint());
}

// ---------------------------------------------------------------------------

ZenoBasis zeno_basis_states() {
  const SystemConfig cfg{3, 1.0, 0.0};
  const int dim = cfg.dimension();
  auto ket = [dim](int i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
  };
  const Vector psi2 = ket(1), psi3 = ket(2), psi4 = ket(3), psi5 = ket(4), psi6 = ket(5), psi7 = ket(6);
  const double s2 = std::numbers::sqrt2, s3 = std::numbers::sqrt3, s6 = std::sqrt(6.0);
  ZenoBasis b;
  b.mu_plus = (psi4 + psi6) / s2;
  b.mu_minus = (psi4 - psi6) / s2;
  b.zeta = (psi5 + psi7) / s2;
  b.phi1 = (-s2 * psi2 + b.mu_plus) / s3;
  b.phi2 = (psi2 + s3 * psi3 + s2 * b.mu_plus) / s6;
  b.phi3 = (psi2 - s3 * psi3 + s2 * b.mu_plus) / s6;
  return b;
}

Vector zeta_state(const SystemConfig& cfg) {
  cfg.validate();
  Vector v = Vector::Zero(cfg.dimension());
  for (int k = 2; k <= cfg.n_atoms; ++k) v(f_index(k)) = 1.0;
  return v / std::sqrt(cfg.n_atoms - 1.0);
}

Vector bright_excited(const SystemConfig& cfg) {
  cfg.validate();
  Vector v = Vector::Zero(cfg.dimension());
  for (int k = 2; k <= cfg.n_atoms; ++k) v(excited_index(k)) = 1.0;
  return v / std::sqrt(cfg.n_atoms - 1.0);
}

Vector phi1_state(const SystemConfig& cfg) {
  Vector v = bright_excited(cfg);
  v(excited_index(1)) = -std::sqrt(cfg.n_atoms - 1.0);
  return v / std::sqrt(static_cast<double>(cfg.n_atoms));
}

Matrix symmetric_sector(const SystemConfig& cfg) {
  cfg.validate();
  Matrix v = Matrix::Zero(cfg.dimension(), 5);
  v(0, 0) = 1.0;
  v(excited_index(1), 1) = 1.0;
  v(kPhotonIndex, 2) = 1.0;
  v.col(3) = bright_excited(cfg);
  v.col(4) = zeta_state(cfg);
  return v;
}

}  // namespace wstate
