#include <doctest.h>

#include <cmath>

#include "wstate/core.hpp"

using namespace wstate;

namespace {

// Resonant three-atom Hamiltonian written out entry by entry.
Matrix hand_built_h0(double o1, double os, double lambda) {
  Matrix h = Matrix::Zero(8, 8);
  auto link = [&](int a, int b, double v) {
    h(a, b) = v;
    h(b, a) = v;
  };
  link(1, 0, o1);
  link(3, 4, os);
  link(5, 6, os);
  link(1, 2, lambda);
  link(3, 2, lambda);
  link(5, 2, lambda);
  return h;
}

}  // namespace

TEST_CASE("three-atom basis order and labels") {
  const SystemConfig cfg;
  const auto basis = build_basis(cfg);
  REQUIRE(basis.size() == 8);
  const char* labels[] = {"psi1", "psi2", "psi3", "psi4", "psi5", "psi6", "psi7", "ground"};
  for (int i = 0; i < 8; ++i) {
    CHECK(basis[i].label() == labels[i]);
    CHECK(basis[i].index == i);
  }
  CHECK(basis[0].kind == StateKind::FirstAtomF);
  CHECK(basis[1].kind == StateKind::AtomExcited);
  CHECK(basis[2].kind == StateKind::Photon);
  CHECK(basis[7].kind == StateKind::AllGround);
  CHECK(excited_index(1) == 1);
  CHECK(excited_index(3) == 5);
  CHECK(f_index(2) == 4);
  CHECK(f_index(1) == 0);
  CHECK(ground_index(cfg) == 7);
  CHECK(index_of(cfg, StateKind::AtomF, 3) == 6);
}

TEST_CASE("basis dimension grows as 2N+2") {
  for (int n = 2; n <= 6; ++n) {
    const SystemConfig cfg{n, 1.0, 0.0};
    CHECK(build_basis(cfg).size() == static_cast<std::size_t>(2 * n + 2));
  }
}

TEST_CASE("system config validation") {
  CHECK_THROWS_AS((SystemConfig{1, 1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SystemConfig{3, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SystemConfig{3, 1.0, -1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((SystemConfig{3, 1.0, 3.0}.validate()));
}

TEST_CASE("w state has equal weight on the f-carrying states") {
  for (int n = 2; n <= 5; ++n) {
    const SystemConfig cfg{n, 1.0, 0.0};
    const QuantumState w = w_state(cfg);
    CHECK(w.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(population(w, 0) == doctest::Approx(1.0 / n));
    for (int k = 2; k <= n; ++k) CHECK(population(w, f_index(k)) == doctest::Approx(1.0 / n));
    CHECK(population(w, kPhotonIndex) == 0.0);
  }
}

TEST_CASE("quantum state validation") {
  Vector v = Vector::Zero(8);
  v(0) = 2.0;
  CHECK_THROWS_AS(QuantumState::pure(v), std::invalid_argument);
  Matrix rho = Matrix::Zero(8, 8);
  rho(0, 0) = 0.5;
  CHECK_THROWS_AS(QuantumState::mixed(rho), std::invalid_argument);
  rho(0, 0) = 1.0;
  rho(0, 1) = 0.3;
  CHECK_THROWS_AS(QuantumState::mixed(rho), std::invalid_argument);
  rho(0, 1) = 0.0;
  rho(0, 0) = 1.5;
  rho(1, 1) = -0.5;
  CHECK_THROWS_AS(QuantumState::mixed(rho), std::invalid_argument);
}

TEST_CASE("fidelity agrees for pure and density representations") {
  const SystemConfig cfg;
  Vector v(8);
  for (int i = 0; i < 8; ++i) v(i) = cplx(std::sin(i + 1.0), std::cos(2.0 * i));
  v.normalize();
  const QuantumState psi = QuantumState::pure(v);
  const QuantumState rho = QuantumState::mixed(psi.to_density());
  const QuantumState w = w_state(cfg);
  const double expected = std::norm(w.amplitudes().dot(v));
  CHECK(fidelity(psi, w) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fidelity(rho, w) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fidelity(w, w) == doctest::Approx(1.0));
  CHECK(fidelity(QuantumState::basis(cfg, 1), w) == 0.0);
}

TEST_CASE("dark state is annihilated by the resonant Hamiltonian") {
  for (auto [o1, os] : {std::pair{0.3, 0.7}, std::pair{1.0, 1.0}, std::pair{0.0, 1.0}, std::pair{1.0, 0.0}}) {
    const QuantumState d = dark_state(o1, os, 1.0);
    CHECK(d.amplitudes().norm() == doctest::Approx(1.0));
    CHECK((hand_built_h0(o1, os, 1.0) * d.amplitudes()).norm() < 1e-14);
    CHECK(population(d, 1) == 0.0);
  }
}

TEST_CASE("dark state limits and W overlap") {
  // No pump: the dark state is the initial state.
  CHECK(population(dark_state(0.0, 1.0, 1.0), 0) == doctest::Approx(1.0));
  // Equal drives: overlap with W is 3 lambda^2 / (3 lambda^2 + Omega^2).
  const double omega = 0.4;
  const SystemConfig cfg;
  CHECK(fidelity(dark_state(cfg, omega, omega), w_state(cfg)) ==
        doctest::Approx(3.0 / (3.0 + omega * omega)).epsilon(1e-12));
  CHECK_THROWS(dark_state(0.0, 0.0, 1.0));
}

TEST_CASE("projection population matches explicit overlap") {
  const SystemConfig cfg;
  const QuantumState w = w_state(cfg);
  Vector v = Vector::Zero(8);
  v(0) = 1.0;
  CHECK(projection_population(w, v) == doctest::Approx(1.0 / 3.0));
  CHECK(projection_population(QuantumState::mixed(w.to_density()), v) == doctest::Approx(1.0 / 3.0));
}
