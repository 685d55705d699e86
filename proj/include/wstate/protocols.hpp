#pragma once

// The three W-state generation schemes (adiabatic passage, Zeno dynamics,
// counter-diabatic shortcut), wired from pulses + Hamiltonians + integrators.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wstate/dynamics.hpp"
#include "wstate/hamiltonians.hpp"
#include "wstate/pulses.hpp"

namespace wstate {

enum class Protocol { Adiabatic, Zeno, Shortcut };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& name);

struct RunOptions {
  int n_steps = 4000;
  int store_every = 1;
  /// Evolution end time; defaults to the protocol's tf.
  std::optional<double> cutoff;
  double gamma = 0.0;
  double kappa = 0.0;
};

struct ProtocolResult {
  Protocol protocol = Protocol::Shortcut;
  double final_fidelity = 0.0;
  Trajectory trajectory;
  std::vector<double> fidelity;
  /// Keyed by basis label (psi1, psi3, psi5, ...) and "phi1"; adiabatic runs
  /// also carry the dark-state reference curves as "dark_psi1", ...
  std::map<std::string, std::vector<double>> populations;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;

  [[nodiscard]] const std::vector<double>& times() const { return trajectory.times; }
};

ProtocolResult run_adiabatic(const SystemConfig& cfg, const StirapParams& stirap, const RunOptions& opts = {});

/// Constant Zeno drives for t_f = pi / beta (three atoms). Reports the
/// analytic effective-model prediction next to the full numerics.
ProtocolResult run_zeno(const SystemConfig& cfg, double omega1, int branch, const RunOptions& opts = {});

/// Detuned model (cfg.detuning = sp.delta) driven by the engineered pulses.
ProtocolResult run_shortcut(const SystemConfig& cfg, const ShortcutParams& sp, const StirapParams& base,
                            const RunOptions& opts = {});
/// Same as run_shortcut with the atom number taken from cfg.
ProtocolResult run_shortcut_n_atoms(const SystemConfig& cfg, const ShortcutParams& sp, const StirapParams& base,
                                    const RunOptions& opts = {});

/// Exact three-level solution of the constant Zeno Hamiltonian started in psi1,
/// in the canonical 8-dim basis.
Vector zeno_analytic_state(double omega1, double omega_s, double t);

struct ChainResult {
  double full = 0.0;       // complete detuned model
  double zeno = 0.0;       // 3-level Zeno projection with detuned phi1
  double effective = 0.0;  // 2-level model after eliminating phi1
};

/// Same pulses and initial condition through the three approximation layers.
ChainResult effective_model_chain(const ShortcutParams& sp, const StirapParams& base, const RunOptions& opts = {});

/// max_n |<Psi_0| d_t Psi_n>| / |xi_n| over the nonzero-energy eigenstates of
/// the resonant Hamiltonian restricted to the sector reachable from psi1.
double adiabaticity_measure(const SystemConfig& cfg, const PulseSchedule& pulses, double t, double dt = 0.0);
double adiabaticity_measure(const SystemConfig& cfg, const StirapParams& stirap, double t);
/// Maximum of the measure over n_points interior times of (0, tf).
double max_adiabaticity(const SystemConfig& cfg, const StirapParams& stirap, int n_points = 200);

/// Flat job description consumed by sweeps and the CLI.
struct JobSpec {
  Protocol protocol = Protocol::Shortcut;
  int n_atoms = 3;
  // adiabatic
  double omega0 = 1.0;
  double alpha = 0.7853981633974483;
  // shortcut (tf is shared with the adiabatic pulses; for Zeno it is the evolution time)
  std::optional<double> tf;
  double delta = 3.0;
  double correction = 1.04;
  double nu_scale = 1.0;
  // zeno
  double omega1 = 0.05;
  int branch = 1;
  // common
  std::optional<double> cutoff;
  double gamma = 0.0;
  double kappa = 0.0;
  int n_steps = 4000;
  int store_every = 1;

  /// Defaults used throughout: adiabatic (Omega0 = 1, tf = 80), Zeno
  /// (Omega1 = 0.05, + branch), shortcut (Delta = 3, tf = 35, correction 1.04).
  static JobSpec defaults(Protocol p);
  [[nodiscard]] double effective_tf() const;
  [[nodiscard]] double effective_cutoff() const;
  void validate() const;
};

ProtocolResult run_job(const JobSpec& job);

}  // namespace wstate
