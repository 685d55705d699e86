#include "wstate/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wstate {

namespace {

struct Gaussian {
  double center;
  double width;
  [[nodiscard]] double value(double t) const {
    const double y = (t - center) / width;
    return std::exp(-y * y);
  }
  [[nodiscard]] double derivative(double t) const {
    return -2.0 * (t - center) / (width * width) * value(t);
  }
};

}  // namespace

StirapParams StirapParams::with_defaults(double omega0, double tf) {
  return StirapParams{omega0, tf, 0.15 * tf, 0.2 * tf, std::atan(1.0)};
}

void StirapParams::validate() const {
  if (!(tf > 0.0)) throw std::invalid_argument("tf must be > 0");
  if (!(tc > 0.0)) throw std::invalid_argument("tc must be > 0");
  if (!(t0 > 0.0 && t0 < tf)) throw std::invalid_argument("t0 must lie in (0, tf)");
  if (!std::isfinite(omega0)) throw std::invalid_argument("omega0 must be finite");
}

PulseSchedule stirap_schedule(const StirapParams& p) {
  p.validate();
  const Gaussian late{p.t0 + 0.5 * p.tf, p.tc};
  const Gaussian early{-p.t0 + 0.5 * p.tf, p.tc};
  const double a1 = std::sin(p.alpha) * p.omega0;
  const double a_early = p.omega0;
  const double a_late = std::cos(p.alpha) * p.omega0;

  PulseSchedule s;
  s.omega1 = [=](double t) { return cplx(a1 * late.value(t)); };
  s.omega_s = [=](double t) { return cplx(a_early * early.value(t) + a_late * late.value(t)); };
  s.d_omega1 = [=](double t) { return cplx(a1 * late.derivative(t)); };
  s.d_omega_s = [=](double t) { return cplx(a_early * early.derivative(t) + a_late * late.derivative(t)); };
  s.tf = p.tf;
  s.label = "stirap";
  s.real_valued = true;
  return s;
}

ZenoSchedule zeno_schedule(double omega1, int branch) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  if (omega1 == 0.0 || !std::isfinite(omega1)) throw std::invalid_argument("zeno drive amplitude must be nonzero");
  if (branch == 1 && omega1 < 0.0) throw std::invalid_argument("omega1 must be > 0 on the + branch");
  ZenoSchedule z;
  z.omega1 = omega1;
  z.omega_s = (1.0 + branch * std::numbers::sqrt3) * omega1;
  z.beta = std::sqrt((2.0 * omega1 * omega1 + z.omega_s * z.omega_s) / 3.0);
  z.tf = std::numbers::pi / z.beta;
  const double o1 = z.omega1;
  const double os = z.omega_s;
  z.schedule.omega1 = [o1](double) { return cplx(o1); };
  z.schedule.omega_s = [os](double) { return cplx(os); };
  z.schedule.d_omega1 = [](double) { return cplx(0.0); };
  z.schedule.d_omega_s = [](double) { return cplx(0.0); };
  z.schedule.tf = z.tf;
  z.schedule.label = "zeno";
  z.schedule.real_valued = true;
  return z;
}

double theta(const PulseSchedule& s, double t, int n_atoms) {
  const double o1 = s.omega1(t).real();
  const double os = s.omega_s(t).real();
  if (o1 == 0.0 && os == 0.0) throw std::domain_error("theta: both pulses vanish");
  return std::atan2(std::sqrt(n_atoms - 1.0) * o1, os);
}

double theta_dot(const PulseSchedule& s, double t, int n_atoms) {
  if (!s.has_derivatives()) throw std::invalid_argument("theta_dot: schedule has no analytic derivatives");
  const double r = std::sqrt(n_atoms - 1.0);
  const double o1 = s.omega1(t).real();
  const double os = s.omega_s(t).real();
  const double denom = os * os + r * r * o1 * o1;
  if (denom == 0.0) throw std::domain_error("theta_dot: both pulses vanish");
  const double d1 = s.d_omega1(t).real();
  const double ds = s.d_omega_s(t).real();
  return r * (d1 * os - o1 * ds) / denom;
}

void ShortcutParams::validate() const {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (!(tf > 0.0)) throw std::invalid_argument("tf must be > 0");
  if (!(correction > 0.0)) throw std::invalid_argument("correction must be > 0");
  if (n_atoms < 2) throw std::invalid_argument("n_atoms must be >= 2");
  if (!(amplitude_scale > 0.0)) throw std::invalid_argument("amplitude scale must be > 0");
}

SignViolation::SignViolation(double t, double value)
    : std::domain_error("theta_dot < 0 at t = " + std::to_string(t) + " (value " + std::to_string(value) +
                        "); Omega_x would be imaginary"),
      time(t),
      theta_dot(value) {}

namespace {
constexpr double kSignTolerance = 1e-10;
constexpr int kSignCheckPoints = 2001;
}  // namespace

double ShortcutPulses::target_theta_dot(double t) const {
  return theta_dot(stirap_schedule(base), t, params.n_atoms);
}

double ShortcutPulses::omega_x(double t) const { return schedule.omega_s(t).real(); }

double ShortcutPulses::g(double t) const { return omega_x(t) / (params.amplitude_scale * nu); }

ShortcutPulses shortcut_schedule(const ShortcutParams& p, const StirapParams& base) {
  p.validate();
  base.validate();
  if (std::abs(base.tf - p.tf) > 1e-12 * p.tf) {
    throw std::invalid_argument("shortcut tf and reference STIRAP tf differ");
  }
  const PulseSchedule ref = stirap_schedule(base);
  const int n = p.n_atoms;
  for (int i = 0; i < kSignCheckPoints; ++i) {
    const double t = p.tf * i / (kSignCheckPoints - 1);
    const double td = theta_dot(ref, t, n);
    if (td < -kSignTolerance) throw SignViolation(t, td);
  }

  const double scale = p.amplitude_scale;
  const double strength = n * p.delta;
  auto omega_x = [ref, n, strength, scale](double t) {
    const double td = theta_dot(ref, t, n);
    if (td < -kSignTolerance) throw SignViolation(t, td);
    return scale * std::sqrt(strength * std::max(td, 0.0));
  };
  const cplx phase1 = cplx(0.0, p.correction / std::sqrt(n - 1.0));

  ShortcutPulses out;
  out.base = base;
  out.params = p;
  out.nu = std::sqrt(6.0 * std::numbers::sqrt2 * p.delta / p.tf);
  out.schedule.omega1 = [omega_x, phase1](double t) { return phase1 * omega_x(t); };
  out.schedule.omega_s = [omega_x](double t) { return cplx(omega_x(t)); };
  out.schedule.tf = p.tf;
  out.schedule.label = "shortcut";
  out.schedule.real_valued = false;
  return out;
}

ShortcutPulses shortcut_schedule(const ShortcutParams& p) {
  return shortcut_schedule(p, StirapParams::with_defaults(1.0, p.tf));
}

}  // namespace wstate
