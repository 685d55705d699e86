#include "wstate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wstate {

namespace {

constexpr cplx kMinusI{0.0, -1.0};

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  cplx value;
};

// Jump operators here are very sparse (one entry each); applying L rho L^+
// entrywise avoids two dense products per operator.
struct JumpTerm {
  std::vector<Entry> entries;

  void accumulate(const Matrix& rho, Matrix& out) const {
    for (const Entry& a : entries) {
      for (const Entry& b : entries) {
        out(a.row, b.row) += a.value * rho(a.col, b.col) * std::conj(b.value);
      }
    }
  }
};

JumpTerm sparse_of(const Matrix& l) {
  JumpTerm term;
  for (Eigen::Index j = 0; j < l.cols(); ++j) {
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      if (l(i, j) != cplx(0.0)) term.entries.push_back({i, j, l(i, j)});
    }
  }
  return term;
}

int stride_for(const EvolveOptions& opts, int factor) { return opts.store_every > 0 ? opts.store_every * factor : 0; }

bool should_store(int step, int n_steps, int stride) {
  if (step == 0 || step == n_steps) return true;
  return stride > 0 && step % stride == 0;
}

void check_common(const TimeDependentOperator& h, Eigen::Index dim, const TimeGrid& grid, const EvolveOptions& opts) {
  grid.validate();
  if (h.dimension != dim) throw std::invalid_argument("Hamiltonian and state dimensions differ");
  if (opts.store_every < 0) throw std::invalid_argument("store_every must be >= 0");
  if (opts.max_refinements < 0) throw std::invalid_argument("max_refinements must be >= 0");
}

Trajectory schrodinger_pass(const TimeDependentOperator& h, const Vector& psi0, const TimeGrid& grid, int stride) {
  Trajectory traj;
  const int n = grid.n_steps;
  const double dt = grid.step();
  Vector psi = psi0;
  const double norm0 = psi0.norm();
  Matrix h_now = h(grid.t_start);
  traj.times.push_back(grid.t_start);
  traj.states.push_back(QuantumState::trusted_pure(psi));

  for (int step = 0; step < n; ++step) {
    const double t = grid.t_start + step * dt;
    const double t_next = step + 1 == n ? grid.t_end : grid.t_start + (step + 1) * dt;
    const Matrix h_mid = h(t + 0.5 * dt);
    const Matrix h_next = h(t_next);
    const Vector k1 = kMinusI * (h_now * psi);
    const Vector k2 = kMinusI * (h_mid * (psi + 0.5 * dt * k1));
    const Vector k3 = kMinusI * (h_mid * (psi + 0.5 * dt * k2));
    const Vector k4 = kMinusI * (h_next * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_now = h_next;

    traj.monitors.max_norm_drift = std::max(traj.monitors.max_norm_drift, std::abs(psi.norm() - norm0));
    if (step + 1 < n && should_store(step + 1, n, stride)) {
      traj.times.push_back(t_next);
      traj.states.push_back(QuantumState::trusted_pure(psi));
    }
  }
  traj.times.push_back(grid.t_end);
  traj.states.push_back(QuantumState::trusted_pure(psi));
  traj.monitors.steps_used = n;
  return traj;
}

class LindbladRhs {
 public:
  LindbladRhs(const LindbladSet& ops, Eigen::Index dim) : loss_(Matrix::Zero(dim, dim)) {
    for (const Matrix& l : ops.operators) {
      if (l.rows() != dim || l.cols() != dim) throw std::invalid_argument("Lindblad operator dimension mismatch");
      jumps_.push_back(sparse_of(l));
      loss_ += l.adjoint() * l;
    }
  }

  // With K = -iH - G/2 and rho Hermitian: d rho = K rho + (K rho)^+ + sum L rho L^+.
  Matrix operator()(const Matrix& h, const Matrix& rho) const {
    const Matrix k = kMinusI * h - 0.5 * loss_;
    const Matrix k_rho = k * rho;
    Matrix out = k_rho + k_rho.adjoint();
    for (const JumpTerm& j : jumps_) j.accumulate(rho, out);
    return out;
  }

 private:
  std::vector<JumpTerm> jumps_;
  Matrix loss_;
};

Trajectory lindblad_pass(const TimeDependentOperator& h, const LindbladRhs& rhs, const Matrix& rho0,
                         const TimeGrid& grid, int stride, int positivity_every) {
  Trajectory traj;
  const int n = grid.n_steps;
  const double dt = grid.step();
  const double trace0 = rho0.trace().real();
  Matrix rho = rho0;
  Matrix h_now = h(grid.t_start);
  traj.times.push_back(grid.t_start);
  traj.states.push_back(QuantumState::trusted_mixed(rho));

  auto min_eig = [](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };
  traj.monitors.min_eigenvalue = min_eig(rho);

  for (int step = 0; step < n; ++step) {
    const double t = grid.t_start + step * dt;
    const double t_next = step + 1 == n ? grid.t_end : grid.t_start + (step + 1) * dt;
    const Matrix h_mid = h(t + 0.5 * dt);
    const Matrix h_next = h(t_next);
    const Matrix k1 = rhs(h_now, rho);
    const Matrix k2 = rhs(h_mid, rho + 0.5 * dt * k1);
    const Matrix k3 = rhs(h_mid, rho + 0.5 * dt * k2);
    const Matrix k4 = rhs(h_next, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_now = h_next;

    traj.monitors.max_hermiticity_error = std::max(traj.monitors.max_hermiticity_error, hermiticity_error(rho));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    traj.monitors.max_trace_drift =
        std::max(traj.monitors.max_trace_drift, std::abs(rho.trace().real() - trace0));
    if ((step + 1) % positivity_every == 0 || step + 1 == n) {
      traj.monitors.min_eigenvalue = std::min(traj.monitors.min_eigenvalue, min_eig(rho));
    }
    if (step + 1 < n && should_store(step + 1, n, stride)) {
      traj.times.push_back(t_next);
      traj.states.push_back(QuantumState::trusted_mixed(rho));
    }
  }
  traj.times.push_back(grid.t_end);
  traj.states.push_back(QuantumState::trusted_mixed(rho));
  traj.monitors.steps_used = n;
  return traj;
}

}  // namespace

void TimeGrid::validate() const {
  if (!(t_end > t_start)) throw std::invalid_argument("time grid: t_end must exceed t_start");
  if (n_steps < 1) throw std::invalid_argument("time grid: n_steps must be >= 1");
}

LindbladSet lindblad_ops(const SystemConfig& cfg, double gamma, double kappa) {
  cfg.validate();
  if (gamma < 0.0 || kappa < 0.0) throw std::invalid_argument("lindblad_ops: negative rate");
  const int dim = cfg.dimension();
  const int ground = ground_index(cfg);
  const double atomic = std::sqrt(gamma / 2.0);
  LindbladSet set;
  for (int k = 1; k <= cfg.n_atoms; ++k) {
    Matrix to_f = Matrix::Zero(dim, dim);
    to_f(f_index(k), excited_index(k)) = atomic;
    set.operators.push_back(std::move(to_f));
    Matrix to_g = Matrix::Zero(dim, dim);
    to_g(ground, excited_index(k)) = atomic;
    set.operators.push_back(std::move(to_g));
  }
  Matrix cavity = Matrix::Zero(dim, dim);
  cavity(ground, kPhotonIndex) = std::sqrt(kappa);
  set.operators.push_back(std::move(cavity));
  return set;
}

Trajectory evolve_schrodinger(const TimeDependentOperator& h, const QuantumState& psi0, const TimeGrid& grid,
                              const EvolveOptions& opts) {
  if (!psi0.is_pure()) throw std::invalid_argument("evolve_schrodinger: initial state must be pure");
  check_common(h, psi0.dimension(), grid, opts);

  TimeGrid fine = grid;
  for (int r = 0;; ++r) {
    const int factor = 1 << r;
    Trajectory traj = schrodinger_pass(h, psi0.amplitudes(), fine, stride_for(opts, factor));
    traj.monitors.refinements = r;
    if (traj.monitors.max_norm_drift <= opts.norm_tolerance) return traj;
    if (r == opts.max_refinements) {
      throw IntegrationFailure("norm drift " + std::to_string(traj.monitors.max_norm_drift) + " after " +
                                   std::to_string(r) + " step doublings",
                               traj.monitors);
    }
    fine.n_steps *= 2;
  }
}

Trajectory evolve_lindblad(const TimeDependentOperator& h, const LindbladSet& ops, const QuantumState& rho0,
                           const TimeGrid& grid, const EvolveOptions& opts) {
  const Matrix rho_init = rho0.to_density();
  check_common(h, rho_init.rows(), grid, opts);
  if (opts.positivity_check_every < 1) throw std::invalid_argument("positivity_check_every must be >= 1");
  const LindbladRhs rhs(ops, rho_init.rows());

  TimeGrid fine = grid;
  for (int r = 0;; ++r) {
    const int factor = 1 << r;
    Trajectory traj = lindblad_pass(h, rhs, rho_init, fine, stride_for(opts, factor),
                                    opts.positivity_check_every * factor);
    traj.monitors.refinements = r;
    const bool trace_ok = traj.monitors.max_trace_drift <= opts.trace_tolerance;
    const bool positive = traj.monitors.min_eigenvalue >= -opts.positivity_tolerance;
    if (trace_ok && positive) return traj;
    if (r == opts.max_refinements) {
      throw IntegrationFailure("trace drift " + std::to_string(traj.monitors.max_trace_drift) +
                                   ", min eigenvalue " + std::to_string(traj.monitors.min_eigenvalue) + " after " +
                                   std::to_string(r) + " step doublings",
                               traj.monitors);
    }
    fine.n_steps *= 2;
  }
}

}  // namespace wstate
