#include "wstate/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wstate {

namespace {

// Observables recorded for every stored state of a protocol run.
struct Observer {
  SystemConfig cfg;
  Vector target;
  Vector phi1;
  Matrix sector;
  std::optional<Vector> mu_minus;

  explicit Observer(const SystemConfig& c)
      : cfg(c), target(w_state(c).amplitudes()), phi1(phi1_state(c)), sector(symmetric_sector(c)) {
    if (c.n_atoms == 3) mu_minus = zeno_basis_states().mu_minus;
  }

  void record(const Trajectory& traj, ProtocolResult& out) const {
    const QuantumState target_state = QuantumState::pure(target);
    std::vector<std::pair<std::string, int>> tracked{{"psi1", 0}, {"psi3", kPhotonIndex}};
    for (int k = 2; k <= cfg.n_atoms; ++k) tracked.emplace_back("psi" + std::to_string(f_index(k) + 1), f_index(k));

    double max_phi1 = 0.0, max_photon = 0.0, max_asym = 0.0, max_mu_minus = 0.0;
    for (const QuantumState& s : traj.states) {
      out.fidelity.push_back(fidelity(s, target_state));
      for (const auto& [name, idx] : tracked) out.populations[name].push_back(population(s, idx));
      const double p_phi1 = projection_population(s, phi1);
      out.populations["phi1"].push_back(p_phi1);
      max_phi1 = std::max(max_phi1, p_phi1);
      max_photon = std::max(max_photon, population(s, kPhotonIndex));

      double inside = population(s, ground_index(cfg));
      for (Eigen::Index c = 0; c < sector.cols(); ++c) inside += projection_population(s, sector.col(c));
      max_asym = std::max(max_asym, std::abs(s.trace() - inside));
      if (mu_minus) max_mu_minus = std::max(max_mu_minus, projection_population(s, *mu_minus));
    }
    out.final_fidelity = out.fidelity.back();
    out.diagnostics["max_phi1_population"] = max_phi1;
    out.diagnostics["max_psi3_population"] = max_photon;
    out.diagnostics["max_asymmetric_population"] = max_asym;
    if (mu_minus) out.diagnostics["max_mu_minus_population"] = max_mu_minus;
    const Monitors& m = traj.monitors;
    out.diagnostics["steps_used"] = m.steps_used;
    out.diagnostics["refinements"] = m.refinements;
    if (traj.final_state().is_pure()) {
      out.diagnostics["max_norm_drift"] = m.max_norm_drift;
    } else {
      out.diagnostics["max_trace_drift"] = m.max_trace_drift;
      out.diagnostics["max_hermiticity_error"] = m.max_hermiticity_error;
      out.diagnostics["min_eigenvalue"] = m.min_eigenvalue;
    }
  }
};

Trajectory propagate(const SystemConfig& cfg, const TimeDependentOperator& h, double cutoff, const RunOptions& opts) {
  if (opts.gamma < 0.0 || opts.kappa < 0.0) throw std::invalid_argument("decay rates must be >= 0");
  const TimeGrid grid{0.0, cutoff, opts.n_steps};
  EvolveOptions eo;
  eo.store_every = opts.store_every;
  const QuantumState psi1 = QuantumState::basis(cfg, 0);
  if (opts.gamma > 0.0 || opts.kappa > 0.0) {
    return evolve_lindblad(h, lindblad_ops(cfg, opts.gamma, opts.kappa), QuantumState::mixed(psi1.to_density()),
                           grid, eo);
  }
  return evolve_schrodinger(h, psi1, grid, eo);
}

ProtocolResult finish(Protocol p, const SystemConfig& cfg, Trajectory traj) {
  ProtocolResult out;
  out.protocol = p;
  Observer(cfg).record(traj, out);
  out.trajectory = std::move(traj);
  return out;
}

}  // namespace

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::Adiabatic: return "adiabatic";
    case Protocol::Zeno: return "zeno";
    case Protocol::Shortcut: return "shortcut";
  }
  return "unknown";
}

Protocol protocol_from_string(const std::string& name) {
  if (name == "adiabatic" || name == "stirap") return Protocol::Adiabatic;
  if (name == "zeno") return Protocol::Zeno;
  if (name == "shortcut") return Protocol::Shortcut;
  throw std::invalid_argument("unknown protocol '" + name + "'");
}

// ---------------------------------------------------------------------------

ProtocolResult run_adiabatic(const SystemConfig& cfg, const StirapParams& stirap, const RunOptions& opts) {
  cfg.validate();
  if (cfg.detuning != 0.0) throw std::invalid_argument("run_adiabatic: detuning must be 0");
  const PulseSchedule pulses = stirap_schedule(stirap);
  const double cutoff = opts.cutoff.value_or(stirap.tf);
  ProtocolResult out = finish(Protocol::Adiabatic, cfg, propagate(cfg, h0_operator(cfg, pulses), cutoff, opts));

  std::vector<std::pair<std::string, int>> tracked{{"psi1", 0}, {"psi3", kPhotonIndex}};
  for (int k = 2; k <= cfg.n_atoms; ++k) tracked.emplace_back("psi" + std::to_string(f_index(k) + 1), f_index(k));
  double max_dev = 0.0;
  const auto& actual = out.populations.at("psi1");
  for (std::size_t i = 0; i < out.times().size(); ++i) {
    const double t = out.times()[i];
    const QuantumState dark = dark_state(cfg, pulses.omega1(t).real(), pulses.omega_s(t).real());
    for (const auto& [name, idx] : tracked) out.populations["dark_" + name].push_back(population(dark, idx));
    max_dev = std::max(max_dev, std::abs(actual[i] - out.populations["dark_psi1"].back()));
  }
  out.diagnostics["max_dark_deviation_psi1"] = max_dev;
  return out;
}

Vector zeno_analytic_state(double omega1, double omega_s, double t) {
  const double beta = std::sqrt((2.0 * omega1 * omega1 + omega_s * omega_s) / 3.0);
  const double c = std::cos(beta * t);
  const double s = std::sin(beta * t);
  const double b2 = 3.0 * beta * beta;
  const ZenoBasis zb = zeno_basis_states();
  Vector psi1 = Vector::Zero(8);
  psi1(0) = 1.0;
  const cplx a_psi1 = (omega_s * omega_s + 2.0 * omega1 * omega1 * c) / b2;
  const cplx a_phi1 = cplx(0.0, std::numbers::sqrt2 * omega1 * s / (std::numbers::sqrt3 * beta));
  const cplx a_zeta = std::numbers::sqrt2 * omega1 * omega_s * (1.0 - c) / b2;
  return a_psi1 * psi1 + a_phi1 * zb.phi1 + a_zeta * zb.zeta;
}

ProtocolResult run_zeno(const SystemConfig& cfg, double omega1, int branch, const RunOptions& opts) {
  cfg.validate();
  if (cfg.n_atoms != 3) throw std::invalid_argument("run_zeno: the Zeno scheme is defined for three atoms");
  if (cfg.detuning != 0.0) throw std::invalid_argument("run_zeno: detuning must be 0");
  const ZenoSchedule z = zeno_schedule(omega1, branch);
  const double cutoff = opts.cutoff.value_or(z.tf);
  ProtocolResult out = finish(Protocol::Zeno, cfg, propagate(cfg, h0_operator(cfg, z.schedule), cutoff, opts));
  if (std::abs(omega1) > 0.1 * cfg.lambda) {
    out.warnings.push_back("Omega_1 > 0.1 lambda: Zeno condition Omega << sqrt(3) lambda is weak");
  }

  const ZenoBasis zb = zeno_basis_states();
  const std::vector<int> compared{0, 4, 6};
  double max_dev = 0.0, max_leak = 0.0;
  for (std::size_t i = 0; i < out.times().size(); ++i) {
    const QuantumState predicted = QuantumState::trusted_pure(zeno_analytic_state(z.omega1, z.omega_s, out.times()[i]));
    const QuantumState& actual = out.trajectory.states[i];
    for (int idx : compared) max_dev = std::max(max_dev, std::abs(population(actual, idx) - population(predicted, idx)));
    max_dev = std::max(max_dev, std::abs(projection_population(actual, zb.phi1) -
                                         projection_population(predicted, zb.phi1)));
    max_leak = std::max(max_leak, projection_population(actual, zb.phi2) + projection_population(actual, zb.phi3));
  }
  const Vector final_prediction = zeno_analytic_state(z.omega1, z.omega_s, cutoff);
  out.diagnostics["tf"] = z.tf;
  out.diagnostics["beta"] = z.beta;
  out.diagnostics["analytic_final_fidelity"] = fidelity(final_prediction, w_state(cfg).amplitudes());
  out.diagnostics["max_analytic_deviation"] = max_dev;
  out.diagnostics["max_zeno_leakage"] = max_leak;
  return out;
}

ProtocolResult run_shortcut(const SystemConfig& cfg, const ShortcutParams& sp, const StirapParams& base,
                            const RunOptions& opts) {
  cfg.validate();
  sp.validate();
  if (cfg.detuning != sp.delta) throw std::invalid_argument("run_shortcut: cfg.detuning must equal the shortcut delta");
  if (cfg.n_atoms != sp.n_atoms) throw std::invalid_argument("run_shortcut: atom numbers differ");
  const ShortcutPulses pulses = shortcut_schedule(sp, base);
  const double cutoff = opts.cutoff.value_or(sp.tf);
  ProtocolResult out =
      finish(Protocol::Shortcut, cfg, propagate(cfg, apf_operator(cfg, pulses.schedule), cutoff, opts));
  out.diagnostics["nu"] = pulses.nu;
  out.diagnostics["tf_lower_bound_zeno"] = 2.0 * std::numbers::sqrt2 * sp.delta / (cfg.lambda * cfg.lambda);
  out.diagnostics["tf_lower_bound_elimination"] = 2.0 * std::numbers::sqrt2 / sp.delta;
  return out;
}

ProtocolResult run_shortcut_n_atoms(const SystemConfig& cfg, const ShortcutParams& sp, const StirapParams& base,
                                    const RunOptions& opts) {
  ShortcutParams p = sp;
  p.n_atoms = cfg.n_atoms;
  return run_shortcut(cfg, p, base, opts);
}

ChainResult effective_model_chain(const ShortcutParams& sp, const StirapParams& base, const RunOptions& opts) {
  if (sp.n_atoms != 3) throw std::invalid_argument("effective_model_chain: three atoms only");
  const SystemConfig cfg{3, 1.0, sp.delta};
  RunOptions quiet = opts;
  quiet.store_every = 0;

  ChainResult out;
  out.full = run_shortcut(cfg, sp, base, quiet).final_fidelity;

  const ShortcutPulses pulses = shortcut_schedule(sp, base);
  const PulseSchedule sched = pulses.schedule;
  const double delta = sp.delta;
  const TimeGrid grid{0.0, opts.cutoff.value_or(sp.tf), opts.n_steps};
  EvolveOptions eo;
  eo.store_every = 0;
  Vector w(3);
  w << 1.0 / std::numbers::sqrt3, std::numbers::sqrt2 / std::numbers::sqrt3, 0.0;

  const TimeDependentOperator hz{[sched, delta](double t) { return build_HZ(sched.omega1(t), sched.omega_s(t), delta); },
                                 3};
  Vector start3 = Vector::Zero(3);
  start3(0) = 1.0;
  out.zeno = fidelity(evolve_schrodinger(hz, QuantumState::pure(start3), grid, eo).final_state().amplitudes(), w);

  const TimeDependentOperator heff{
      [sched, delta](double t) { return build_Heff(sched.omega1(t), sched.omega_s(t), delta); }, 2};
  Vector start2 = Vector::Zero(2);
  start2(0) = 1.0;
  out.effective = fidelity(evolve_schrodinger(heff, QuantumState::pure(start2), grid, eo).final_state().amplitudes(),
                           Vector(w.head(2)));
  return out;
}

// ---------------------------------------------------------------------------

double adiabaticity_measure(const SystemConfig& cfg, const PulseSchedule& pulses, double t, double dt) {
  cfg.validate();
  if (dt <= 0.0) dt = 1e-4 * std::max(pulses.tf, 1.0);
  const Matrix v = symmetric_sector(cfg);
  auto sector_h = [&](double time) -> Matrix { return v.adjoint() * build_H0(cfg, pulses, time) * v; };

  const GaugedEigensystem mid = gauged_eigensystem(sector_h(t));
  GaugedEigensystem fwd = gauged_eigensystem(sector_h(t + dt));
  GaugedEigensystem bwd = gauged_eigensystem(sector_h(t - dt));
  for (const GaugedEigensystem* sys : std::initializer_list<const GaugedEigensystem*>{&mid, &fwd, &bwd}) {
    const double gap = min_gap(sys->values);
    if (gap < 1e-8) throw EigenCrossing(t, gap);
  }
  align_phases(mid.vectors, fwd.vectors);
  align_phases(mid.vectors, bwd.vectors);

  Eigen::Index dark = 0;
  mid.values.cwiseAbs().minCoeff(&dark);
  const Vector psi0 = mid.vectors.col(dark);
  double worst = 0.0;
  for (Eigen::Index n = 0; n < mid.values.size(); ++n) {
    if (n == dark) continue;
    const Vector d_psi_n = (fwd.vectors.col(n) - bwd.vectors.col(n)) / (2.0 * dt);
    worst = std::max(worst, std::abs(psi0.dot(d_psi_n)) / std::abs(mid.values(n)));
  }
  return worst;
}

double adiabaticity_measure(const SystemConfig& cfg, const StirapParams& stirap, double t) {
  return adiabaticity_measure(cfg, stirap_schedule(stirap), t);
}

double max_adiabaticity(const SystemConfig& cfg, const StirapParams& stirap, int n_points) {
  const PulseSchedule pulses = stirap_schedule(stirap);
  double worst = 0.0;
  for (int i = 1; i <= n_points; ++i) {
    const double t = stirap.tf * i / (n_points + 1.0);
    worst = std::max(worst, adiabaticity_measure(cfg, pulses, t));
  }
  return worst;
}

// ---------------------------------------------------------------------------

JobSpec JobSpec::defaults(Protocol p) {
  JobSpec j;
  j.protocol = p;
  switch (p) {
    case Protocol::Adiabatic: j.tf = 80.0; break;
    case Protocol::Zeno: break;
    case Protocol::Shortcut: j.tf = 35.0; break;
  }
  return j;
}

double JobSpec::effective_tf() const {
  if (tf) return *tf;
  switch (protocol) {
    case Protocol::Adiabatic: return 80.0;
    case Protocol::Zeno: return zeno_schedule(omega1, branch).tf;
    case Protocol::Shortcut: return 35.0;
  }
  return 0.0;
}

double JobSpec::effective_cutoff() const { return cutoff.value_or(effective_tf()); }

void JobSpec::validate() const {
  if (n_atoms < 2) throw std::invalid_argument("n_atoms must be >= 2");
  if (tf && !(*tf > 0.0)) throw std::invalid_argument("tf must be > 0");
  if (cutoff && !(*cutoff > 0.0)) throw std::invalid_argument("T must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  if (n_steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (store_every < 0) throw std::invalid_argument("store_every must be >= 0");
  switch (protocol) {
    case Protocol::Adiabatic:
      if (!std::isfinite(omega0)) throw std::invalid_argument("omega0 must be finite");
      break;
    case Protocol::Zeno:
      if (n_atoms != 3) throw std::invalid_argument("n_atoms must be 3 for the Zeno protocol");
      if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
      if (omega1 == 0.0) throw std::invalid_argument("omega1 must be nonzero");
      break;
    case Protocol::Shortcut:
      if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
      if (!(correction > 0.0)) throw std::invalid_argument("correction must be > 0");
      if (!(nu_scale > 0.0)) throw std::invalid_argument("nu must be > 0");
      break;
  }
}

ProtocolResult run_job(const JobSpec& job) {
  job.validate();
  RunOptions opts;
  opts.n_steps = job.n_steps;
  opts.store_every = job.store_every;
  opts.cutoff = job.cutoff;
  opts.gamma = job.gamma;
  opts.kappa = job.kappa;
  const double tf = job.effective_tf();
  switch (job.protocol) {
    case Protocol::Adiabatic: {
      StirapParams p = StirapParams::with_defaults(job.omega0, tf);
      p.alpha = job.alpha;
      return run_adiabatic(SystemConfig{job.n_atoms, 1.0, 0.0}, p, opts);
    }
    case Protocol::Zeno:
      if (!job.cutoff) opts.cutoff = tf;
      return run_zeno(SystemConfig{3, 1.0, 0.0}, job.omega1, job.branch, opts);
    case Protocol::Shortcut: {
      StirapParams base = StirapParams::with_defaults(1.0, tf);
      base.alpha = job.alpha;
      const ShortcutParams sp{job.delta, tf, job.correction, job.n_atoms, job.nu_scale};
      return run_shortcut(SystemConfig{job.n_atoms, 1.0, job.delta}, sp, base, opts);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace wstate
