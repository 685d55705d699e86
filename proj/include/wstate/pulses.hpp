#pragma once

// Drive schedules: counter-intuitive STIRAP Gaussians, constant Zeno drives and
// the engineered shortcut pulse whose effective coupling equals the
// counter-diabatic rotation rate.

#include <functional>
#include <stdexcept>
#include <string>

#include "wstate/core.hpp"

namespace wstate {

using PulseFn = std::function<cplx(double)>;

/// Omega_1(t) drives atom 1, Omega_s(t) drives atoms 2..N. Derivatives are
/// optional and only present for analytically differentiable shapes.
struct PulseSchedule {
  PulseFn omega1;
  PulseFn omega_s;
  PulseFn d_omega1;
  PulseFn d_omega_s;
  double tf = 0.0;
  std::string label;
  bool real_valued = true;

  [[nodiscard]] bool has_derivatives() const { return d_omega1 && d_omega_s; }
};

struct StirapParams {
  double omega0 = 1.0;
  double tf = 80.0;
  double t0 = 12.0;
  double tc = 16.0;
  double alpha = 0.7853981633974483;  // arctan(1)

  /// t0 = 0.15 tf, tc = 0.2 tf, tan(alpha) = 1.
  static StirapParams with_defaults(double omega0, double tf);
  void validate() const;
};

PulseSchedule stirap_schedule(const StirapParams& p);

struct ZenoSchedule {
  PulseSchedule schedule;
  double omega1 = 0.0;
  double omega_s = 0.0;
  double beta = 0.0;  // sqrt((2 Omega1^2 + Omega_s^2) / 3)
  double tf = 0.0;    // pi / beta
};

/// Constant drives with Omega_s = (1 + branch*sqrt(3)) Omega_1, branch = +1 or -1.
ZenoSchedule zeno_schedule(double omega1, int branch);

/// Dark-state mixing angle atan(sqrt(N-1) Omega_1 / Omega_s) on the Omega_s >= 0
/// branch; for N = 3 this is atan(sqrt(2) Omega_1 / Omega_s).
double theta(const PulseSchedule& s, double t, int n_atoms = 3);
/// Closed-form time derivative of theta; requires analytic pulse derivatives.
double theta_dot(const PulseSchedule& s, double t, int n_atoms = 3);

struct ShortcutParams {
  double delta = 3.0;
  double tf = 35.0;
  double correction = 1.04;
  int n_atoms = 3;
  /// Multiplies the whole Omega_x amplitude (the nu deviation of the robustness scans).
  double amplitude_scale = 1.0;

  void validate() const;
};

/// Engineered pulse pair plus the bookkeeping quantities of its design.
struct ShortcutPulses {
  PulseSchedule schedule;
  StirapParams base;
  ShortcutParams params;
  double nu = 0.0;  // sqrt(6 sqrt(2) Delta / tf)

  /// Real Omega_x(t) including amplitude_scale.
  [[nodiscard]] double omega_x(double t) const;
  /// Dimensionless envelope G(t) = Omega_x(t) / nu, without amplitude_scale.
  [[nodiscard]] double g(double t) const;
  /// theta_dot of the reference adiabatic path (N-atom mixing angle).
  [[nodiscard]] double target_theta_dot(double t) const;
};

/// Thrown when the reference path has theta_dot < 0 somewhere, which would
/// make Omega_x = sqrt(N Delta theta_dot) imaginary.
class SignViolation : public std::domain_error {
 public:
  SignViolation(double t, double value);
  double time;
  double theta_dot;
};

/// Omega_x = sqrt(N Delta theta_dot), Omega_s = Omega_x and
/// Omega_1 = +i * correction * Omega_x / sqrt(N-1).
ShortcutPulses shortcut_schedule(const ShortcutParams& p, const StirapParams& base);
ShortcutPulses shortcut_schedule(const ShortcutParams& p);

}  // namespace wstate
