#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wstate/pulses.hpp"

using namespace wstate;

namespace {

double gauss(double t, double c, double w) { return std::exp(-(t - c) * (t - c) / (w * w)); }

}  // namespace

TEST_CASE("stirap pulses follow the two-Gaussian form") {
  const StirapParams p = StirapParams::with_defaults(1.0, 80.0);
  CHECK(p.t0 == doctest::Approx(12.0));
  CHECK(p.tc == doctest::Approx(16.0));
  const PulseSchedule s = stirap_schedule(p);
  const double sa = std::sin(p.alpha);
  const double ca = std::cos(p.alpha);
  for (double t : {0.0, 10.0, 28.0, 40.0, 52.0, 80.0}) {
    const double late = gauss(t, 40.0 + 12.0, 16.0);
    const double early = gauss(t, 40.0 - 12.0, 16.0);
    CHECK(s.omega1(t).real() == doctest::Approx(sa * late).epsilon(1e-14));
    CHECK(s.omega_s(t).real() == doctest::Approx(early + ca * late).epsilon(1e-14));
    CHECK(s.omega1(t).imag() == 0.0);
  }
  CHECK(s.omega1(52.0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s.omega1(0.0).real() == doctest::Approx(std::exp(-3.25 * 3.25) * sa).epsilon(1e-12));
  CHECK(s.real_valued);
}

TEST_CASE("stirap ordering: stokes pulse peaks first") {
  const PulseSchedule s = stirap_schedule(StirapParams::with_defaults(1.0, 1.0));
  double t1 = 0.0, ts = 0.0, m1 = -1.0, ms = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    if (s.omega1(t).real() > m1) m1 = s.omega1(t).real(), t1 = t;
    if (s.omega_s(t).real() > ms) ms = s.omega_s(t).real(), ts = t;
  }
  CHECK(ts < t1);
}

TEST_CASE("stirap values are positive and bounded") {
  const StirapParams p = StirapParams::with_defaults(1.3, 60.0);
  const PulseSchedule s = stirap_schedule(p);
  for (int i = 1; i < 500; ++i) {
    const double t = 60.0 * i / 500.0;
    CHECK(s.omega1(t).real() > 0.0);
    CHECK(s.omega_s(t).real() > 0.0);
    CHECK(s.omega_s(t).real() <= 1.3 * (1.0 + std::cos(p.alpha)) + 1e-12);
  }
}

TEST_CASE("mixing angle endpoints") {
  const PulseSchedule s = stirap_schedule(StirapParams::with_defaults(1.0, 80.0));
  // sqrt(2) Omega_1(0) / Omega_s(0) is about 5.5e-4.
  CHECK(std::abs(theta(s, 0.0)) < 1e-3);
  CHECK(std::abs(theta(s, 80.0) - std::atan(std::sqrt(2.0))) < 1e-3);
}

TEST_CASE("theta_dot matches a central difference of theta") {
  const PulseSchedule s = stirap_schedule(StirapParams::with_defaults(1.0, 35.0));
  const double h = 1e-5;
  for (int i = 1; i <= 100; ++i) {
    const double t = 35.0 * (i + 0.37) / 102.0;
    const double fd = (theta(s, t + h) - theta(s, t - h)) / (2 * h);
    CHECK(std::abs(theta_dot(s, t) - fd) < 1e-8);
  }
  for (int n : {2, 4, 5}) {
    const double t = 17.0;
    const double fd = (theta(s, t + h, n) - theta(s, t - h, n)) / (2 * h);
    CHECK(std::abs(theta_dot(s, t, n) - fd) < 1e-8);
  }
}

TEST_CASE("zeno schedule parameters") {
  const ZenoSchedule z = zeno_schedule(0.05, 1);
  CHECK(z.omega_s == doctest::Approx((1.0 + std::sqrt(3.0)) * 0.05));
  CHECK(z.beta == doctest::Approx(0.0888).epsilon(1e-3));
  CHECK(std::abs(z.tf - 35.4) < 0.1);
  for (int branch : {1, -1}) {
    const ZenoSchedule b = zeno_schedule(0.07, branch);
    CHECK(b.omega_s * b.omega_s + 2 * b.omega1 * b.omega1 == doctest::Approx(3 * b.beta * b.beta));
    CHECK(b.tf == doctest::Approx(std::numbers::pi / b.beta));
    CHECK(theta_dot(b.schedule, 3.0) == 0.0);
  }
  CHECK(zeno_schedule(0.05, -1).omega_s < 0.0);
  CHECK_THROWS(zeno_schedule(0.0, 1));
  CHECK_THROWS(zeno_schedule(0.05, 2));
}

TEST_CASE("shortcut pulse design relations") {
  const ShortcutParams sp{3.0, 35.0, 1.0, 3, 1.0};
  const ShortcutPulses sc = shortcut_schedule(sp);
  CHECK(sc.nu == doctest::Approx(std::sqrt(6 * std::sqrt(2.0) * 3 / 35)).epsilon(1e-12));
  CHECK(sc.nu == doctest::Approx(0.853).epsilon(1e-3));
  CHECK_FALSE(sc.schedule.real_valued);

  const PulseSchedule ref = stirap_schedule(StirapParams::with_defaults(1.0, 35.0));
  double gmax = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 35.0 * i / 2000.0;
    const double ox = sc.omega_x(t);
    CHECK(std::abs(3 * 3.0 * theta_dot(ref, t) - ox * ox) < 1e-12);
    // Omega_1 is the Stokes amplitude over sqrt(2), a quarter period ahead in phase.
    CHECK(std::abs(sc.schedule.omega1(t) - cplx(0.0, ox / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(sc.schedule.omega_s(t) - cplx(ox, 0.0)) < 1e-14);
    gmax = std::max(gmax, std::abs(sc.g(t)));
  }
  CHECK(gmax > 0.5);
  CHECK(gmax < 1.5);
}

TEST_CASE("shortcut pulse area reproduces the mixing-angle sweep") {
  const ShortcutParams sp{3.0, 35.0, 1.0, 3, 1.0};
  const ShortcutPulses sc = shortcut_schedule(sp);
  const PulseSchedule ref = stirap_schedule(StirapParams::with_defaults(1.0, 35.0));
  // Composite Simpson on Omega_x^2 / (3 Delta).
  const int n = 4000;
  const double h = 35.0 / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double ox = sc.omega_x(i * h);
    acc += w * ox * ox / 9.0;
  }
  acc *= h / 3.0;
  CHECK(acc == doctest::Approx(theta(ref, 35.0) - theta(ref, 0.0)).epsilon(1e-8));
  CHECK(std::abs(acc - std::atan(std::sqrt(2.0))) < 2e-3);
}

TEST_CASE("shortcut correction and amplitude scale") {
  const ShortcutParams sp{3.0, 35.0, 1.04, 4, 1.05};
  const ShortcutPulses sc = shortcut_schedule(sp);
  const double t = 20.0;
  CHECK(std::abs(sc.schedule.omega1(t)) ==
        doctest::Approx(1.04 * std::abs(sc.schedule.omega_s(t)) / std::sqrt(3.0)));
  CHECK(sc.omega_x(t) == doctest::Approx(1.05 * sc.g(t) * sc.nu));
}

TEST_CASE("shortcut parameter validation") {
  CHECK_THROWS((ShortcutParams{0.0, 35.0, 1.0, 3, 1.0}.validate()));
  CHECK_THROWS((ShortcutParams{3.0, -1.0, 1.0, 3, 1.0}.validate()));
  CHECK_THROWS((ShortcutParams{3.0, 35.0, 0.0, 3, 1.0}.validate()));
  CHECK_THROWS((ShortcutParams{3.0, 35.0, 1.0, 1, 1.0}.validate()));
  CHECK_THROWS(shortcut_schedule(ShortcutParams{3.0, 35.0, 1.0, 3, 1.0}, StirapParams::with_defaults(1.0, 40.0)));
}

TEST_CASE("negative theta_dot is reported as a sign violation") {
  // A negative pump amplitude turns the mixing angle the other way.
  StirapParams p = StirapParams::with_defaults(1.0, 35.0);
  p.alpha = -p.alpha;
  CHECK_THROWS_AS(shortcut_schedule(ShortcutParams{3.0, 35.0, 1.0, 3, 1.0}, p), SignViolation);
}
